"""Koszul complexes, systems of parameters, chain-map lifting into the
minimal resolution of k, and the canonical element probe."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations

from .complexes import FreeComplex
from .modules import ModMatrix, Resolution, reduce_vec, resolution_of_k
from .quotient import IdealA, QuotientRing
from .syzygy import Elimination


class LiftError(ArithmeticError):
    """A lifting equation had no solution; the target is not a resolution."""


def koszul(x) -> FreeComplex:
    """``K(x, A)``: basis of ``K_i`` the ``i``-subsets in lexicographic order,
    ``d(e_S) = sum_k (-1)^k x_{s_k} e_{S - s_k}``."""
    x = list(x)
    if not x:
        raise ValueError("need at least one element")
    A = x[0].ring
    x = [A(a) for a in x]
    if any(a.is_zero() for a in x):
        raise ValueError("Koszul elements must be nonzero")
    if not all(a.poly.is_homogeneous() for a in x):
        raise ValueError("Koszul elements must be homogeneous")
    n = len(x)
    degs = [a.poly.degree() for a in x]
    subsets = [list(combinations(range(n), i)) for i in range(n + 1)]
    sdeg = [tuple(sum(degs[s] for s in S) for S in subsets[i]) for i in range(n + 1)]
    maps = []
    for i in range(1, n + 1):
        index = {S: r for r, S in enumerate(subsets[i - 1])}
        rows = [[A.zero()] * len(subsets[i]) for _ in subsets[i - 1]]
        for j, S in enumerate(subsets[i]):
            for k, s in enumerate(S):
                a = x[s] if k % 2 == 0 else -x[s]
                rows[index[S[:k] + S[k + 1:]]][j] = a
        maps.append(ModMatrix(A, rows, len(subsets[i - 1]), len(subsets[i]), sdeg[i - 1], sdeg[i]))
    return FreeComplex(A, maps, 1)


@dataclass(frozen=True)
class SOP:
    ring: QuotientRing
    elements: tuple

    def __post_init__(self):
        if not is_sop(list(self.elements), self.ring):
            raise ValueError("not a system of parameters")


def is_sop(x, ring: QuotientRing | None = None) -> bool:
    """``len(x) == dim A`` and ``A/(x)`` has dimension zero."""
    x = list(x)
    A = ring if ring is not None else x[0].ring
    if len(x) != A.dim:
        return False
    I = IdealA(A, x)
    return I.is_m_primary()


# -- chain maps ---------------------------------------------------------------------

@dataclass
class ChainMap:
    source: FreeComplex
    target: Resolution
    phis: list

    def commutes(self) -> bool:
        """``d^F_i phi_i == phi_{i-1} d^K_i`` for every ``i``."""
        for i in range(1, len(self.phis)):
            lhs = self.target.differential(i) @ self.phis[i]
            rhs = self.phis[i - 1] @ self.source.d(i)
            if lhs.rows != rhs.rows:
                return False
        return True

    def top(self) -> ModMatrix:
        return self.phis[-1]


def _random_element(A, deg, rng):
    if deg < 0:
        return A.zero()
    if deg == 0:
        return A(A.S.const(A.field.random(rng)))
    return A(A.S.random_form(deg, rng))


def _homotopy_perturbation(res: Resolution, i, degree, rng):
    """``d_{i+1}(r)`` for a random homogeneous ``r`` of the given degree."""
    d = res.differential(i + 1)
    if d.ncols == 0:
        return {}
    A = d.ring
    r = []
    for e in d.source.degrees:
        r.append(_random_element(A, degree - e, rng) if rng.random() < 0.7 else A.zero())
    img = d.apply(r)
    v = {}
    for row, a in enumerate(img):
        for ex, c in a.poly.terms.items():
            v[(row, ex)] = c
    return v


def _vec_add(A, u, w):
    F = A.field
    out = dict(u)
    for k, c in w.items():
        s = F.add(out.get(k, F.zero()), c)
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def lift_chain_map(K: FreeComplex, F: Resolution, seed=None) -> ChainMap:
    """Lift ``A/(x) -> k`` to ``phi: K(x, A) -> F``.

    ``phi_0`` is the identity on ``A``; ``phi_i`` solves
    ``d^F_i phi_i = phi_{i-1} d^K_i`` column by column.  With a seed, each
    solution is moved by a random boundary ``d^F_{i+1}(r)``, so different
    seeds give different (homotopic) lifts.
    """
    A = K.ring
    S = A.S
    d = K.length
    if F.ranks[0] != 1 or K.ranks[0] != 1:
        raise ValueError("both complexes must start at A")
    rng = random.Random(seed) if seed is not None else None
    phis = [ModMatrix.identity(A, 1, K.degrees(0))]
    for i in range(1, d + 1):
        dF = F.differential(i)
        dK = K.d(i)
        rhs = phis[i - 1] @ dK
        if dF.ncols == 0:
            if not rhs.is_zero():
                raise LiftError(f"no lift at degree {i}")
            phis.append(ModMatrix.zero(A, 0, dK.ncols, (), dK.source.degrees))
            continue
        elim = Elimination(dF.col_vecs(), dF.nrows, A.I.basis_terms(), S.nvars, S.order, S.p,
                           row_shifts=dF.target.degrees, col_shifts=dF.source.degrees)
        cols = []
        for j, w in enumerate(rhs.col_vecs()):
            c = elim.solve(w) if w else {}
            if c is None:
                raise LiftError(f"column {j} at degree {i} is not a boundary")
            c = reduce_vec(A, c)
            if rng is not None:
                c = reduce_vec(A, _vec_add(A, c, _homotopy_perturbation(F, i, dK.source.degrees[j], rng)))
            cols.append(c)
        phis.append(ModMatrix.from_columns(A, cols, dF.ncols, dF.source.degrees, dK.source.degrees))
    cm = ChainMap(K, F, phis)
    if not cm.commutes():
        raise LiftError("lifted map does not commute with the differentials")
    return cm


# -- the probe --------------------------------------------------------------------------

@dataclass
class LiftOutcome:
    seed: int
    column: list
    nonzero: bool
    nonzero_mod_m: bool

    def to_json(self):
        return {"seed": self.seed, "phi_d": [str(a) for a in self.column],
                "nonzero": self.nonzero, "nonzero_mod_m": self.nonzero_mod_m}


@dataclass
class CECReport:
    sop: list
    d: int
    resolution_ranks: list
    outcomes: list

    @property
    def nonvanishing(self) -> bool:
        return all(o.nonzero for o in self.outcomes)

    def to_json(self):
        return {"sop": [str(a) for a in self.sop], "d": self.d,
                "resolution_ranks": list(self.resolution_ranks),
                "outcomes": [o.to_json() for o in self.outcomes],
                "nonvanishing_observed_for_all_lifts": self.nonvanishing}


def cec_probe(A: QuotientRing, x, seeds=(0, 1, 2)) -> CECReport:
    """Lift ``K(x, A) -> F`` (``F`` resolving k) for each seed and report
    whether ``phi_d`` vanishes, and whether it vanishes modulo ``m F_d``."""
    x = [A(a) for a in x]
    if not is_sop(x, A):
        raise ValueError("not a system of parameters")
    d = len(x)
    # one extra step so the top map can be moved by a boundary
    F = resolution_of_k(A, d + 1)
    outcomes = []
    if d == 0:
        for s in seeds:
            outcomes.append(LiftOutcome(s, [A.one()], True, True))
        return CECReport(x, 0, F.ranks[:1], outcomes)
    K = koszul(x)
    for s in seeds:
        phi = lift_chain_map(K, F, s).top()
        col = phi.column(0)
        nz = any(not a.is_zero() for a in col)
        unit = any(not a.in_maximal_ideal() for a in col)
        outcomes.append(LiftOutcome(s, col, nz, unit))
    return CECReport(x, d, F.ranks[:d + 1], outcomes)


def koszul_grade(c: IdealA):
    """Grade from Koszul homology: ``n - max{j : H_j(c_1..c_n; A) != 0}``.

    Independent of the Ext computation behind :func:`quotient.grade`; used to
    recheck negative verdicts.
    """
    from .complexes import is_exact_at
    if c.is_unit():
        return math.inf
    gens = list(c.gens)
    if not gens:
        return 0
    K = koszul(gens)
    n = len(gens)
    for j in range(n, -1, -1):
        if not is_exact_at(K, j):
            return n - j
    raise ArithmeticError("Koszul complex of a proper ideal is exact at 0")
