"""Cohen-Macaulay and Gorenstein tests, Auslander's delta invariant from the
image of ``Ext^d(k, -)``, and the audit of annihilator ideals over
Gorenstein rings."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .linalg import matrix_rank as k_rank
from .modules import (ModMatrix, PresentedModule, bass_number, depth_module, induced_ext_map)
from .quotient import IdealA, QuotientRing, annihilator, is_annihilator_ideal


class NotGorensteinError(ValueError):
    pass


def is_cohen_macaulay(A: QuotientRing) -> bool:
    if A._cache.get("cm") is None:
        A._cache["cm"] = depth_module(PresentedModule.free(A, 1)) == A.dim
    return A._cache["cm"]


def is_gorenstein(A: QuotientRing) -> bool:
    """Cohen-Macaulay of type one: ``dim_k Ext^d(k, A) = 1``."""
    if A._cache.get("gor") is None:
        A._cache["gor"] = is_cohen_macaulay(A) and bass_number(A.dim, PresentedModule.free(A, 1)) == 1
    return A._cache["gor"]


@dataclass
class DeltaReport:
    module: str
    generators: int
    d: int
    delta: int
    surjection: list
    extra: list = field(default_factory=list)   # (surjection, rank) pairs

    @property
    def consistent(self) -> bool:
        return all(r == self.delta for _, r in self.extra)

    def to_json(self):
        return {"module": self.module, "generators": self.generators, "d": self.d,
                "delta": self.delta, "surjection": self.surjection,
                "extra_surjections": [{"surjection": s, "rank": r} for s, r in self.extra],
                "surjection_independent": self.consistent}


def _ext_image_rank(p: ModMatrix, M: PresentedModule, d: int) -> int:
    rows = induced_ext_map(p, M, d)
    return k_rank(M.ring.field, rows) if rows else 0


def _random_element_of(M: PresentedModule, degree: int, rng):
    """A random homogeneous vector of ``A^n`` of the given degree (image in
    ``M``); entries in degree ``degree - deg e_r``."""
    A = M.ring
    out = []
    for e in M.degrees:
        k = degree - e
        if k < 0 or rng.random() < 0.3:
            out.append(A.zero())
        elif k == 0:
            out.append(A(A.S.const(A.field.random(rng))))
        else:
            out.append(A(A.S.random_form(k, rng)))
    return out


def non_minimal_surjections(M: PresentedModule, count: int = 2, seed: int = 0):
    """Surjections ``A^{n+1} -> M`` onto the given generators: the identity
    with one extra column, alternately a scalar copy of a generator (a
    non-minimal element outside ``mM``) and a random element of higher
    degree."""
    A = M.ring
    n = M.ngens
    rng = random.Random(seed)
    out = []
    for k in range(count):
        extra = None
        if k % 2 == 1:
            deg = max(M.degrees) + 1 + rng.randrange(2)
            for _ in range(16):
                extra = _random_element_of(M, deg, rng)
                if any(extra):
                    break
            else:
                # nothing nonzero in that degree (artinian rings)
                extra = None
        if extra is None:
            j = rng.randrange(n)
            extra = [A.zero()] * n
            extra[j] = A(A.S.const(A.field.random(rng)))
            deg = M.degrees[j]
        rows = [[A.one() if r == c else A.zero() for c in range(n)] + [extra[r]] for r in range(n)]
        out.append(ModMatrix(A, rows, n, n + 1, M.degrees, tuple(M.degrees) + (deg,)))
    return out


def delta(M: PresentedModule, extra: int = 2, seed: int = 0, label: str = "M") -> DeltaReport:
    """``delta(M) = rank (Ext^d(k, A^t) -> Ext^d(k, M))`` for a minimal
    surjection; ``extra`` non-minimal surjections are evaluated as a check."""
    A = M.ring
    if not is_gorenstein(A):
        raise NotGorensteinError("delta is only computed over Gorenstein rings")
    pres = M.minimal_presentation()
    t = pres.nrows
    if t == 0:
        raise ValueError("module is zero")
    Mmin = PresentedModule(pres)
    d = A.dim
    p = ModMatrix.identity(A, t, pres.target.degrees)
    rep = DeltaReport(label, t, d, _ext_image_rank(p, Mmin, d), p.to_strings())
    for q in non_minimal_surjections(Mmin, extra, seed):
        rep.extra.append((q.to_strings(), _ext_image_rank(q, Mmin, d)))
    return rep


def direct_sum(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    A = M.ring
    P, Q = M.P, N.P
    rows = []
    for r in range(P.nrows):
        rows.append(list(P.rows[r]) + [A.S.zero()] * Q.ncols)
    for r in range(Q.nrows):
        rows.append([A.S.zero()] * P.ncols + list(Q.rows[r]))
    mat = ModMatrix(A, rows, P.nrows + Q.nrows, P.ncols + Q.ncols,
                    tuple(P.target.degrees) + tuple(Q.target.degrees),
                    tuple(P.source.degrees) + tuple(Q.source.degrees))
    return PresentedModule(mat)


@dataclass
class Th9Report:
    ideal: list
    instance: bool
    reason: str | None
    delta: DeltaReport | None = None

    @property
    def ok(self) -> bool:
        """Only meaningful for instances: the predicted value ``delta = 0``."""
        return self.instance and self.delta is not None and self.delta.delta == 0

    def to_json(self):
        return {"ideal": [str(g) for g in self.ideal], "instance": self.instance,
                "reason": self.reason, "delta": None if self.delta is None else self.delta.to_json(),
                "delta_zero": self.ok if self.instance else None}


def theorem9_audit(R: QuotientRing, b: IdealA, extra: int = 2, seed: int = 0) -> Th9Report:
    """For a nonzero proper annihilator ideal ``b`` of a Gorenstein ring,
    ``delta(R/b)`` should vanish.  Inputs outside that setting are reported
    as non-instances."""
    gens = [g.poly for g in b.gens]
    if not is_gorenstein(R):
        return Th9Report(gens, False, "ring is not Gorenstein")
    if b.is_zero():
        return Th9Report(gens, False, "ideal is zero (a nonnull ideal is required)")
    if b.is_unit():
        return Th9Report(gens, False, "ideal is not proper")
    if annihilator(b).is_zero():
        return Th9Report(gens, False, "not an ideal of zerodivisors (it contains a nonzerodivisor)")
    if not is_annihilator_ideal(b):
        return Th9Report(gens, False, "not unmixed: Ann(Ann(b)) differs from b")
    rep = delta(PresentedModule.cyclic(b), extra, seed, label=f"R/{b}")
    return Th9Report(gens, True, None, rep)
