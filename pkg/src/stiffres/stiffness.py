"""Stiffness audits of minimal free complexes and the grade bounds that
accompany them: column (content) ideals, random base-change probes, regular
sequence certificates, minor grades in fixed columns, syzygy generator counts
and order ideals.

Verdicts are graded by strength of evidence: ``VERIFIED_BASIS`` (the given
bases pass), ``PROBED(n)`` (also ``n`` random base changes pass),
``CERTIFIED`` (every column ideal carries a checked regular sequence of the
required length).  ``VIOLATED`` is a disproof and always carries its column.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations

from .complexes import FreeComplex, MinorCache, _grade_json
from .modules import ModMatrix, PresentedModule, kernel_gens
from .quotient import (IdealA, annihilator, check_regular_sequence, find_regular_sequence,
                       grade)

VERIFIED_BASIS = "VERIFIED_BASIS"
CERTIFIED = "CERTIFIED"
VIOLATED = "VIOLATED"
INCONCLUSIVE = "INCONCLUSIVE"
SUBSET_LIMIT = 64


class NotMinimalError(ValueError):
    """The complex has a differential entry outside the maximal ideal."""


def probed(n: int) -> str:
    return f"PROBED({n})"


def _require_minimal(F: FreeComplex):
    if not F.is_minimal():
        raise NotMinimalError("complex is not minimal (a differential has a unit entry)")


def content_ideal(F: FreeComplex, i: int, v) -> IdealA:
    """Ideal generated by the coordinates of ``d_i(v)``."""
    if not 1 <= i <= F.length:
        raise ValueError(f"no differential d_{i}")
    d = F.d(i)
    if len(v) != d.ncols:
        raise ValueError(f"vector of length {len(v)} for a map with {d.ncols} source generators")
    return IdealA(F.ring, d.apply(v))


def column_ideal(d: ModMatrix, j: int) -> IdealA:
    return IdealA(d.ring, [d.rows[r][j] for r in range(d.nrows)])


@dataclass
class ColumnCheck:
    i: int
    column: int
    gens: list
    grade: float | None
    bound: int
    ok: bool | None
    certificate: list | None = None

    def to_json(self):
        out = {"i": self.i, "column": self.column, "content_ideal": [str(g) for g in self.gens],
               "grade": None if self.grade is None else _grade_json(self.grade),
               "bound": self.bound, "ok": self.ok}
        if self.certificate is not None:
            out["certificate"] = [str(a) for a in self.certificate]
        return out


@dataclass
class StiffnessReport:
    verdict: str
    columns: list
    seed: int | None = None
    trials: int = 0
    witness: dict | None = None

    @property
    def violated(self) -> bool:
        return self.verdict == VIOLATED

    def certificates(self):
        return {(c.i, c.column): c.certificate for c in self.columns if c.certificate}

    def to_json(self):
        return {"verdict": self.verdict, "seed": self.seed, "trials": self.trials,
                "columns": [c.to_json() for c in self.columns], "witness": self.witness}


def _check_columns(F: FreeComplex, maps=None):
    maps = F.maps if maps is None else maps
    out = []
    for i, d in enumerate(maps, start=1):
        for j in range(d.ncols):
            c = column_ideal(d, j)
            g = grade(c)
            out.append(ColumnCheck(i, j, [x.poly for x in c.gens], g, i, g >= i))
    return out


def stiffness_check_basis(F: FreeComplex) -> StiffnessReport:
    """Grade of every standard-basis column ideal of ``d_i`` against ``i``."""
    _require_minimal(F)
    cols = _check_columns(F)
    bad = next((c for c in cols if not c.ok), None)
    if bad is not None:
        return StiffnessReport(VIOLATED, cols, witness={"i": bad.i, "column": bad.column,
                                                         "base_change": None})
    return StiffnessReport(VERIFIED_BASIS, cols)


# -- random base changes ------------------------------------------------------

def _random_coefficient(A, deg, rng):
    """A homogeneous element of degree ``deg`` (0, 1 or 2), nonzero in ``A``."""
    F = A.field
    if deg == 0:
        return A(A.S.const(F.random(rng)))
    for _ in range(8):
        c = A(A.S.random_form(deg, rng))
        if c:
            return c
    return None


def random_base_change(A, degrees, rng, steps=None):
    """Product of graded elementary matrices on a free module with generator
    ``degrees``: ``U`` and ``U^{-1}`` as ring-element matrices.  The entry at
    ``(a, b)`` has degree ``deg b - deg a`` in ``{0, 1, 2}``."""
    n = len(degrees)
    one, zero = A.one(), A.zero()
    U = [[one if r == c else zero for c in range(n)] for r in range(n)]
    Uinv = [row[:] for row in U]
    pairs = [(a, b) for a in range(n) for b in range(n)
             if a != b and 0 <= degrees[b] - degrees[a] <= 2]
    if not pairs:
        return U, Uinv
    for _ in range(steps if steps is not None else rng.randint(1, 3)):
        a, b = rng.choice(pairs)
        c = _random_coefficient(A, degrees[b] - degrees[a], rng)
        if c is None:
            continue
        # U <- U (I + c E_ab): column b += c * column a
        for r in range(n):
            if U[r][a]:
                U[r][b] = U[r][b] + c * U[r][a]
        # U^{-1} <- (I - c E_ab) U^{-1}: row a -= c * row b
        for k in range(n):
            if Uinv[b][k]:
                Uinv[a][k] = Uinv[a][k] - c * Uinv[b][k]
    return U, Uinv


def apply_base_changes(F: FreeComplex, changes):
    """``d_i -> U_{i-1}^{-1} d_i U_i`` for ``changes[i] = (U_i, U_i^{-1})``."""
    A = F.ring
    maps = []
    for i, d in enumerate(F.maps, start=1):
        U, _ = changes[i]
        _, Vinv = changes[i - 1]
        src = ModMatrix(A, U, d.ncols, d.ncols, d.source.degrees, d.source.degrees)
        tgt = ModMatrix(A, Vinv, d.nrows, d.nrows, d.target.degrees, d.target.degrees)
        maps.append(tgt @ d @ src)
    return FreeComplex(A, maps, F.ranks[0], check=False)


def _matrix_strings(U):
    return [[str(x) for x in row] for row in U]


def stiffness_probe_random(F: FreeComplex, trials: int = 100, seed: int = 0) -> StiffnessReport:
    """Basis check followed by ``trials`` random graded base changes applied
    independently at every ``F_i``."""
    base = stiffness_check_basis(F)
    base.seed = seed
    if base.violated:
        return base
    rng = random.Random(seed)
    A = F.ring
    for t in range(trials):
        changes = {i: random_base_change(A, F.degrees(i), rng) for i in range(F.length + 1)}
        G = apply_base_changes(F, changes)
        for c in _check_columns(G):
            if not c.ok:
                U, _ = changes[c.i]
                return StiffnessReport(VIOLATED, [c], seed, t + 1, witness={
                    "i": c.i, "column": c.column, "trial": t,
                    "base_change": _matrix_strings(U),
                    "new_column": [str(G.d(c.i).rows[r][c.column]) for r in range(G.d(c.i).nrows)],
                })
    return StiffnessReport(probed(trials) if trials else VERIFIED_BASIS, base.columns, seed, trials)


def stiffness_certificate(F: FreeComplex, seed: int = 0, trials: int = 64) -> StiffnessReport:
    """Search a regular sequence of length ``i`` in every column ideal of ``d_i``;
    each found sequence is rechecked independently."""
    _require_minimal(F)
    cols = []
    all_ok = True
    for i, d in enumerate(F.maps, start=1):
        for j in range(d.ncols):
            c = column_ideal(d, j)
            seq = find_regular_sequence(c, i, seed=seed, trials=trials) if trials else None
            if seq is not None and not (check_regular_sequence(seq)
                                        and all(c.contains(a) for a in seq)):
                raise ArithmeticError("regular sequence search returned an invalid sequence")
            ok = True if seq is not None else None
            all_ok = all_ok and ok is True
            cols.append(ColumnCheck(i, j, [x.poly for x in c.gens], None, i, ok, seq))
    return StiffnessReport(CERTIFIED if all_ok else INCONCLUSIVE, cols, seed, trials)


# -- first syzygies ------------------------------------------------------------------

@dataclass
class AnnCheck:
    column: int
    gens: list
    annihilator: list
    ok: bool

    def to_json(self):
        return {"column": self.column, "content_ideal": [str(g) for g in self.gens],
                "annihilator": [str(g) for g in self.annihilator], "ok": self.ok}


def first_syzygy_ann_check(F: FreeComplex):
    """``Ann`` of each column ideal of ``d_1`` must be zero."""
    _require_minimal(F)
    out = []
    if not F.length:
        return out
    d = F.d(1)
    for j in range(d.ncols):
        c = column_ideal(d, j)
        ann = annihilator(c)
        out.append(AnnCheck(j, [x.poly for x in c.gens], [g.poly for g in ann.gens], ann.is_zero()))
    return out


# -- minors in fixed columns -------------------------------------------------------------

@dataclass
class MinorGradeEntry:
    i: int
    t: int
    columns: tuple
    gens: list
    grade: float
    bound: int
    ok: bool

    def to_json(self):
        return {"i": self.i, "t": self.t, "columns": list(self.columns),
                "ideal": [str(g) for g in self.gens], "grade": _grade_json(self.grade),
                "bound": self.bound, "ok": self.ok}


@dataclass
class MinorGradeTable:
    entries: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def to_json(self):
        return {"ok": self.ok, "entries": [e.to_json() for e in self.entries]}


def thm14_minor_grades(F: FreeComplex, i: int, columns) -> MinorGradeEntry:
    """Grade of the ideal of ``t x t`` minors of ``d_i`` inside ``t`` fixed
    columns, against ``i - t + 1``."""
    columns = tuple(sorted(columns))
    t = len(columns)
    s = F.length
    if not (1 <= t <= i < s):
        raise ValueError(f"need 1 <= t <= i < s, got t={t}, i={i}, s={s}")
    d = F.d(i)
    if len(set(columns)) != t or any(not 0 <= c < d.ncols for c in columns):
        raise ValueError("invalid column subset")
    cache = MinorCache(d)
    gens = []
    for R in combinations(range(d.nrows), t):
        m = cache.det(R, columns)
        if m.terms:
            gens.append(m)
    I = IdealA(F.ring, gens)
    g = grade(I)
    bound = i - t + 1
    return MinorGradeEntry(i, t, columns, [x.poly for x in I.gens], g, bound, g >= bound)


def column_subsets(n, t, rng, limit=SUBSET_LIMIT):
    if math.comb(n, t) <= limit:
        return list(combinations(range(n), t))
    seen = set()
    while len(seen) < limit:
        seen.add(tuple(sorted(rng.sample(range(n), t))))
    return sorted(seen)


def thm14_table(F: FreeComplex, seed: int = 0, limit: int = SUBSET_LIMIT) -> MinorGradeTable:
    """All ``(i, t)`` with ``1 <= t <= i < s``; column subsets exhaustive up to
    ``limit`` per ``(i, t)``, else a seeded sample."""
    _require_minimal(F)
    rng = random.Random(seed)
    table = MinorGradeTable()
    for i in range(1, F.length):
        n = F.ranks[i]
        for t in range(1, min(i, n) + 1):
            for cols in column_subsets(n, t, rng, limit):
                table.entries.append(thm14_minor_grades(F, i, cols))
    return table


# -- syzygy generator counts and order ideals --------------------------------------------

@dataclass
class GeneratorBound:
    i: int
    generators: int
    free: bool
    ok: bool

    def to_json(self):
        return {"i": self.i, "generators": self.generators, "free": self.free, "ok": self.ok}


def _next_map(F: FreeComplex, i):
    if i < F.length:
        return F.d(i + 1)
    return ModMatrix.zero(F.ring, F.ranks[i], 0, F.degrees(i), ())


def thm11_generator_bound(F: FreeComplex, i: int) -> GeneratorBound:
    """``Z_i = im d_i ~ coker d_{i+1}`` needs ``f_i`` generators; when it is
    not free that count must be at least ``i + 1``."""
    _require_minimal(F)
    if not 1 <= i <= F.length:
        raise ValueError(f"no differential d_{i}")
    Z = PresentedModule(_next_map(F, i))
    pres = Z.minimal_presentation()
    n = pres.nrows
    free = pres.ncols == 0
    return GeneratorBound(i, n, free, free or n >= i + 1)


@dataclass
class OrderIdeal:
    i: int
    element: list
    gens: list
    grade: float
    content: list
    contains_content: bool

    @property
    def ok(self) -> bool:
        return self.grade >= self.i and self.contains_content

    def to_json(self):
        return {"i": self.i, "element": [str(a) for a in self.element],
                "order_ideal": [str(g) for g in self.gens], "grade": _grade_json(self.grade),
                "content_ideal": [str(g) for g in self.content],
                "contains_content": self.contains_content, "ok": self.ok}


def hom_to_ring(F: FreeComplex, i: int):
    """Functionals on ``F_i`` vanishing on ``im d_{i+1}``, i.e. ``Hom(Z_i, A)``,
    as coordinate rows."""
    A = F.ring
    nxt = _next_map(F, i)
    n = F.ranks[i]
    if nxt.ncols == 0 or nxt.is_zero():
        return [[A.one() if r == c else A.zero() for c in range(n)] for r in range(n)]
    K = kernel_gens(nxt.transpose())
    return [K.column(j) for j in range(K.ncols)]


def order_ideal_grade(F: FreeComplex, i: int, z) -> OrderIdeal:
    """``Z*(z)``: values at ``z`` of all functionals on ``Z_i``, and its grade."""
    _require_minimal(F)
    A = F.ring
    z = [A(a) for a in z]
    if len(z) != F.ranks[i]:
        raise ValueError("element has the wrong length")
    if all(a.in_maximal_ideal() for a in z):
        raise ValueError("element lies in m*F_i, not a minimal generator")
    shifts = F.degrees(i)
    if len({a.poly.degree() + s for a, s in zip(z, shifts) if a}) > 1 or \
            not all(a.poly.is_homogeneous() for a in z if a):
        raise ValueError("element is not homogeneous")
    vals = []
    for phi in hom_to_ring(F, i):
        acc = A.zero()
        for a, b in zip(phi, z):
            if a and b:
                acc = acc + a * b
        vals.append(acc)
    I = IdealA(A, vals)
    content = content_ideal(F, i, z)
    return OrderIdeal(i, z, [g.poly for g in I.gens], grade(I), [g.poly for g in content.gens],
                      content.issubset(I))
