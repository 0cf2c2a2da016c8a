"""The graded quotient ring A = S/I: elements, ideals, annihilators, grade."""

from __future__ import annotations

import math
import random

from .ideals import IdealS, ideal_quotient, krull_dim_quotient, is_zero_dimensional
from .poly import PolyRing, Polynomial

INF = math.inf
NZD_TRIALS = 64


class QuotientRing:
    """``S/I`` for a proper homogeneous ideal ``I`` of a standard-graded ``S``."""

    def __init__(self, S: PolyRing, ideal_gens=()):
        self.S = S
        I = ideal_gens if isinstance(ideal_gens, IdealS) else IdealS(S, ideal_gens)
        if not I.is_homogeneous():
            raise ValueError("defining ideal must be homogeneous")
        if I.is_unit():
            raise ValueError("defining ideal must be proper")
        self.I = I
        I.basis
        self.dim = krull_dim_quotient(I)
        self._grade_cache = {}
        self._res_k = None
        self._cache = {}

    @classmethod
    def build(cls, field, variables, ideal=(), order="degrevlex") -> "QuotientRing":
        from .field import Field
        F = field if isinstance(field, Field) else Field.from_name(field)
        S = PolyRing(F, variables, order)
        return cls(S, [S(g) for g in ideal])

    @property
    def field(self):
        return self.S.field

    @property
    def characteristic(self) -> int:
        return self.S.field.p

    @property
    def nvars(self) -> int:
        return self.S.nvars

    def __repr__(self):
        rel = ", ".join(map(str, self.I.gens))
        base = f"{self.field.name}[{', '.join(self.S.vars)}]"
        return f"{base}/({rel})" if rel else base

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.S == other.S and self.I == other.I

    def __hash__(self):
        return hash((self.S, self.I.key()))

    # -- elements -----------------------------------------------------------
    def reduce(self, f: Polynomial) -> Polynomial:
        return self.I.normal_form(f)

    def __call__(self, x) -> "RingElem":
        if isinstance(x, RingElem):
            if x.ring != self:
                raise ValueError("element of a different ring")
            return x
        return RingElem(self, self.reduce(self.S(x)))

    def zero(self) -> "RingElem":
        return RingElem(self, self.S.zero())

    def one(self) -> "RingElem":
        return RingElem(self, self.S.one())

    def gens(self):
        return [self(v) for v in self.S.gens()]

    def ideal(self, gens) -> "IdealA":
        return IdealA(self, gens)

    def maximal_ideal(self) -> "IdealA":
        return IdealA(self, self.gens())

    def unit_ideal(self) -> "IdealA":
        return IdealA(self, [self.one()])

    def zero_ideal(self) -> "IdealA":
        return IdealA(self, [])

    def residue_field(self):
        from .modules import PresentedModule
        return PresentedModule.residue_field(self)


class RingElem:
    __slots__ = ("ring", "poly")

    def __init__(self, ring: QuotientRing, poly: Polynomial):
        self.ring = ring
        self.poly = poly

    def _other(self, other):
        if isinstance(other, RingElem):
            return other.poly
        return self.ring.S(other)

    def __add__(self, other):
        return RingElem(self.ring, self.ring.reduce(self.poly + self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElem(self.ring, self.ring.reduce(self.poly - self._other(other)))

    def __rsub__(self, other):
        return RingElem(self.ring, self.ring.reduce(self._other(other) - self.poly))

    def __neg__(self):
        return RingElem(self.ring, -self.poly)

    def __mul__(self, other):
        return RingElem(self.ring, self.ring.reduce(self.poly * self._other(other)))

    __rmul__ = __mul__

    def __pow__(self, n):
        return RingElem(self.ring, self.ring.reduce(self.poly ** n))

    def __eq__(self, other):
        if isinstance(other, RingElem):
            return self.ring == other.ring and self.poly == other.poly
        try:
            return self.poly == self.ring.reduce(self.ring.S(other))
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.poly)

    def __bool__(self):
        return bool(self.poly)

    def is_zero(self):
        return self.poly.is_zero()

    def constant_term(self):
        return self.poly.constant_term()

    def in_maximal_ideal(self) -> bool:
        return not self.poly.constant_term()

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"RingElem({self.poly})"


class IdealA:
    """Ideal of ``A`` given by generators; ``lift`` is its preimage in ``S``."""

    def __init__(self, ring: QuotientRing, gens):
        self.ring = ring
        self.gens = tuple(e for e in (ring(g) for g in gens) if e)
        self._lift = None

    @property
    def lift(self) -> IdealS:
        if self._lift is None:
            self._lift = IdealS(self.ring.S, [g.poly for g in self.gens] + list(self.ring.I.gens))
        return self._lift

    def contains(self, a) -> bool:
        return self.lift.contains(self.ring(a).poly)

    __contains__ = contains

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.lift.is_unit()

    def is_proper(self) -> bool:
        return not self.is_unit()

    def issubset(self, other: "IdealA") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, IdealA):
            return NotImplemented
        return self.ring == other.ring and self.issubset(other) and other.issubset(self)

    def __hash__(self):
        return hash(self.lift.key())

    def key(self):
        return self.lift.key()

    def __add__(self, other: "IdealA") -> "IdealA":
        return IdealA(self.ring, self.gens + other.gens)

    def __mul__(self, other: "IdealA") -> "IdealA":
        return IdealA(self.ring, [a * b for a in self.gens for b in other.gens])

    def minimal_gens(self):
        """Generators reduced to the canonical reduced basis of the lift."""
        A = self.ring
        out = [A(b) for b in self.lift.basis]
        return [e for e in out if e]

    def quotient_ring_dim(self) -> int:
        if self.is_unit():
            raise ValueError("unit ideal")
        return krull_dim_quotient(self.lift)

    def is_m_primary(self) -> bool:
        return not self.is_unit() and is_zero_dimensional(self.lift)

    def __str__(self):
        return "(" + ", ".join(map(str, self.gens)) + ")" if self.gens else "(0)"

    def __repr__(self):
        return f"IdealA{self}"


# -- operations --------------------------------------------------------------

def annihilator(J: IdealA) -> IdealA:
    """``(0 :_A J)``; the unit ideal when ``J = 0``."""
    A = J.ring
    if J.is_zero():
        return A.unit_ideal()
    Q = ideal_quotient(A.I, IdealS(A.S, [g.poly for g in J.gens]))
    return IdealA(A, [A(b) for b in Q.basis])


def is_nzd(a: RingElem) -> bool:
    """True iff multiplication by ``a`` is injective on ``A``."""
    A = a.ring
    if a.is_zero():
        return False
    Q = ideal_quotient(A.I, IdealS(A.S, [a.poly]))
    return Q == A.I


def is_annihilator_ideal(b: IdealA) -> bool:
    """``b == Ann(Ann(b))``; the zero ideal is excluded by convention."""
    if b.is_zero():
        return False
    return annihilator(annihilator(b)) == b


def grade(c: IdealA):
    """Length of a maximal regular sequence in ``c`` (``inf`` for the unit
    ideal), computed as the first nonvanishing ``Ext^i(A/c, A)``."""
    A = c.ring
    if c.is_unit():
        return INF
    key = c.key()
    hit = A._grade_cache.get(key)
    if hit is not None:
        return hit
    if c.is_zero():
        g = 0
    else:
        from .modules import PresentedModule, first_nonvanishing_ext
        M = PresentedModule.cyclic(c)
        g = first_nonvanishing_ext(M, PresentedModule.free(A, 1), A.dim + 1)
        if g is None:
            raise ArithmeticError("Ext^i(A/c, A) vanished up to dim A; engine error")
    A._grade_cache[key] = g
    return g


def _homogenized_combination(gens, rng, field, degree_target=None):
    """A random k-combination of powers of the generators, all raised to a
    common degree so the element stays homogeneous."""
    degs = [g.poly.degree() for g in gens]
    L = 1
    for d in degs:
        L = math.lcm(L, d)
    A = gens[0].ring
    total = A.zero()
    for g, d in zip(gens, degs):
        c = rng.choice([0, 1, -1, 2, -2, None])
        c = field.random(rng) if c is None else field.coerce(c)
        if c:
            total = total + g ** (L // d) * A.S.const(c)
    return total


def find_regular_sequence(c: IdealA, target: int, seed=0, trials: int = NZD_TRIALS):
    """Search for ``a_1..a_target`` in ``c`` forming a regular sequence on ``A``.

    Returns the list of elements, or ``None`` if some step exhausted its trial
    budget (inconclusive, not a disproof).
    """
    if target < 0:
        raise ValueError("target must be nonnegative")
    if target == 0:
        return []
    A = c.ring
    gens = [g for g in c.gens if g]
    if not gens:
        return None
    rng = random.Random(seed)
    field = A.field
    seq = []
    base = A.I
    same_degree = len({g.poly.degree() for g in gens}) == 1
    for _ in range(target):
        found = None
        for t in range(trials):
            if t == 0 and len(gens) == 1:
                cand = gens[0]
            elif same_degree:
                cand = A.zero()
                for g in gens:
                    k = rng.choice([0, 1, -1, 2, -2, None])
                    k = field.random(rng) if k is None else field.coerce(k)
                    if k:
                        cand = cand + g * A.S.const(k)
            else:
                cand = _homogenized_combination(gens, rng, field)
            if cand.is_zero() or not cand.in_maximal_ideal():
                continue
            J = IdealS(A.S, [cand.poly])
            if base.contains(cand.poly):
                continue
            if ideal_quotient(base, J) == base:
                found = cand
                break
        if found is None:
            return None
        seq.append(found)
        base = IdealS(A.S, list(base.gens) + [found.poly])
        if base.is_unit():
            return None
    return seq


def check_regular_sequence(seq) -> bool:
    """Independent validation: each element is a nonzerodivisor modulo the
    previous ones and the final quotient is nonzero."""
    if not seq:
        return True
    A = seq[0].ring
    base = A.I
    for a in seq:
        if not a.in_maximal_ideal():
            return False
        if base.contains(a.poly):
            return False
        if ideal_quotient(base, IdealS(A.S, [a.poly])) != base:
            return False
        base = IdealS(A.S, list(base.gens) + [a.poly])
    return not base.is_unit()
