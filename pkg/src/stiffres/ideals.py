"""Ideals of the polynomial ring: Groebner bases, quotients, dimension."""

from __future__ import annotations

from itertools import combinations

from .groebner import GroebnerBasis, divides, groebner
from .poly import PolyRing, Polynomial
from .syzygy import Elimination


class IdealS:
    """A finitely generated ideal of ``S`` with a cached reduced Groebner basis."""

    def __init__(self, ring: PolyRing, gens, criteria: bool = True):
        self.ring = ring
        self.gens = tuple(g for g in (ring(x) for x in gens) if g)
        self._criteria = criteria
        self._gb = None
        self._basis = None

    # -- Groebner data -------------------------------------------------------
    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = groebner([g.to_vec() for g in self.gens], self.ring.term_order,
                                self.ring.p, self._criteria)
        return self._gb

    @property
    def basis(self):
        """Reduced Groebner basis (monic polynomials, decreasing leads)."""
        if self._basis is None:
            ring = self.ring
            self._basis = tuple(Polynomial.from_vec(ring, v) for v in self.gb.reduced())
            # reducing against the reduced basis keeps normal forms canonical
            rgb = GroebnerBasis(ring.term_order, ring.p)
            for b in self._basis:
                rgb._append_raw(b.to_vec(), (0, b.lead_exps()))
            rgb.complete_flag = True
            self._gb = rgb
        return self._basis

    def basis_terms(self):
        return [b.terms for b in self.basis]

    def normal_form(self, f: Polynomial) -> Polynomial:
        f = self.ring(f) if not isinstance(f, Polynomial) else f
        if f.ring != self.ring:
            raise ValueError("ring mismatch between polynomial and ideal")
        self.basis
        return Polynomial.from_vec(self.ring, self.gb.normal_form(f.to_vec()))

    def contains(self, f) -> bool:
        return self.normal_form(self.ring(f)).is_zero()

    __contains__ = contains

    def is_unit(self) -> bool:
        return any(b.is_constant() for b in self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def leading_ideal(self) -> "IdealS":
        ring = self.ring
        return IdealS(ring, [ring.monomial(b.lead_exps()) for b in self.basis])

    def lead_exps(self):
        return [b.lead_exps() for b in self.basis]

    def key(self):
        """Canonical hashable form (the reduced basis)."""
        return tuple(tuple(sorted(b.terms.items())) for b in self.basis)

    # -- ideal arithmetic ----------------------------------------------------
    def __add__(self, other: "IdealS") -> "IdealS":
        return IdealS(self.ring, self.gens + other.gens)

    def __mul__(self, other: "IdealS") -> "IdealS":
        return IdealS(self.ring, [a * b for a in self.gens for b in other.gens])

    def issubset(self, other: "IdealS") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, IdealS):
            return NotImplemented
        return self.ring == other.ring and self.basis == other.basis

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"IdealS({', '.join(map(str, self.gens)) or '0'})"


def normal_form(f: Polynomial, G: IdealS) -> Polynomial:
    return G.normal_form(f)


def buchberger(gens, ring: PolyRing | None = None, naive: bool = False) -> IdealS:
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators in different rings")
    ideal = IdealS(ring, gens, criteria=not naive)
    ideal.basis
    return ideal


def ideal_quotient(I: IdealS, J: IdealS) -> IdealS:
    """``(I : J) = {f : f*J in I}`` computed as a syzygy module."""
    if I.ring != J.ring:
        raise ValueError("ring mismatch")
    ring = I.ring
    fs = [I.normal_form(g) for g in J.gens]
    fs = [f for f in fs if f]
    if not fs:
        return IdealS(ring, [ring.one()])
    col = {}
    for i, f in enumerate(fs):
        col.update(f.to_vec(i))
    shifts = [0] * len(fs)
    elim = Elimination([col], len(fs), I.basis_terms(), ring.nvars, ring.order, ring.p,
                       row_shifts=shifts, col_shifts=[0])
    gens = [Polynomial.from_vec(ring, v) for v in elim.kernel()]
    return IdealS(ring, list(I.gens) + gens)


def krull_dim_quotient(I: IdealS) -> int:
    """Dimension of ``S/I``: largest set of variables carrying no leading monomial."""
    if I.is_unit():
        raise ValueError("the unit ideal has no quotient dimension")
    return monomial_dim(I.lead_exps(), I.ring.nvars)


def monomial_dim(lead_exps, nvars: int) -> int:
    supports = []
    for e in lead_exps:
        s = frozenset(i for i, a in enumerate(e) if a)
        if not any(t <= s for t in supports):
            supports = [t for t in supports if not s <= t] + [s]
    for size in range(nvars, -1, -1):
        for U in combinations(range(nvars), size):
            U = frozenset(U)
            if not any(s <= U for s in supports):
                return size
    return 0


def is_zero_dimensional(I: IdealS) -> bool:
    """Every variable has a pure power among the leading monomials."""
    n = I.ring.nvars
    hit = set()
    for e in I.lead_exps():
        nz = [i for i, a in enumerate(e) if a]
        if len(nz) == 1:
            hit.add(nz[0])
        elif not nz:
            return True
    return len(hit) == n


def standard_monomial_count(lead_exps, nvars, degree):
    """Number of degree-``degree`` monomials not divisible by any lead."""
    n = 0
    for e in _monos(nvars, degree):
        if not any(divides(l, e) for l in lead_exps):
            n += 1
    return n


def _monos(n, d):
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _monos(n - 1, d - a):
            yield (a,) + rest
