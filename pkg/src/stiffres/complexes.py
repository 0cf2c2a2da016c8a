"""Finite free complexes over A: minors, ranks, the Buchsbaum-Eisenbud
criterion, homology and Eilenberg's splitting into minimal plus trivial parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .modules import ModMatrix, SubQuotient, kernel_gens, schur_eliminate
from .quotient import INF, IdealA, QuotientRing, grade

COFACTOR_LIMIT = 4


class FreeComplex:
    """``0 -> F_s -> ... -> F_1 -> F_0`` with ``maps[i-1] = d_i``."""

    def __init__(self, ring: QuotientRing, maps, f0: int | None = None, check: bool = True):
        self.ring = ring
        self.maps = list(maps)
        if self.maps:
            f0 = self.maps[0].nrows
        elif f0 is None:
            raise ValueError("a complex without maps needs the rank of F_0")
        self.ranks = [f0] + [d.ncols for d in self.maps]
        for i in range(1, len(self.maps)):
            if self.maps[i].nrows != self.maps[i - 1].ncols:
                raise ValueError(f"d_{i + 1} does not land in F_{i}")
        if check:
            for i in range(1, len(self.maps)):
                if not (self.maps[i - 1] @ self.maps[i]).is_zero():
                    raise ValueError(f"d_{i} * d_{i + 1} is not zero")

    @classmethod
    def from_rows(cls, ring, matrices, f0=None, f0_degrees=None, check=True):
        """Build from row-major entry lists, chaining generator degrees."""
        maps = []
        tdeg = f0_degrees
        for rows in matrices:
            nrows = len(rows)
            ncols = len(rows[0]) if rows else 0
            if tdeg is None:
                tdeg = (0,) * nrows
            d = ModMatrix(ring, rows, nrows, ncols, tdeg)
            maps.append(d)
            tdeg = d.source.degrees
        return cls(ring, maps, f0, check)

    @classmethod
    def from_ranks_and_rows(cls, ring, ranks, matrices, check=True):
        """``ranks = [f_0, ..., f_s]``; empty matrices are shaped from ranks."""
        maps = []
        tdeg = (0,) * ranks[0]
        for i, rows in enumerate(matrices, start=1):
            nrows, ncols = ranks[i - 1], ranks[i]
            if not rows:
                rows = [[0] * ncols for _ in range(nrows)]
            d = ModMatrix(ring, rows, nrows, ncols, tdeg)
            maps.append(d)
            tdeg = d.source.degrees
        return cls(ring, maps, ranks[0], check)

    @classmethod
    def from_resolution(cls, res):
        return cls(res.module.ring, res.maps, res.ranks[0], check=False)

    @property
    def length(self) -> int:
        return len(self.maps)

    def d(self, i) -> ModMatrix:
        return self.maps[i - 1]

    def degrees(self, i):
        if i == 0:
            return self.maps[0].target.degrees if self.maps else (0,) * self.ranks[0]
        return self.maps[i - 1].source.degrees

    def is_graded(self) -> bool:
        return all(d.is_homogeneous() for d in self.maps)

    def is_minimal(self) -> bool:
        return is_minimal(self)

    def to_json(self):
        return {"ranks": list(self.ranks), "maps": [d.to_strings() for d in self.maps]}

    def __repr__(self):
        return f"FreeComplex(ranks={self.ranks})"


def is_minimal(F: FreeComplex) -> bool:
    """Every differential entry lies in the maximal ideal."""
    return not any(d.has_unit_entry() for d in F.maps)


# -- minors ------------------------------------------------------------------

def _bareiss(rows, A):
    """Determinant over S by fraction-free elimination, reduced into A."""
    S = A.S
    n = len(rows)
    M = [list(r) for r in rows]
    sign = 1
    prev = S.one()
    for k in range(n - 1):
        if not M[k][k].terms:
            swap = next((r for r in range(k + 1, n) if M[r][k].terms), None)
            if swap is None:
                return S.zero()
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).divexact(prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return A.reduce(det if sign > 0 else -det)


class MinorCache:
    """Memoized cofactor expansion of minors of one matrix."""

    def __init__(self, M: ModMatrix):
        self.M = M
        self.A = M.ring
        self.memo = {}

    def det(self, rows, cols):
        rows, cols = tuple(rows), tuple(cols)
        if len(rows) > COFACTOR_LIMIT:
            return _bareiss([[self.M.rows[r][c] for c in cols] for r in rows], self.A)
        key = (rows, cols)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        A = self.A
        S = A.S
        if len(rows) == 1:
            val = self.M.rows[rows[0]][cols[0]]
        else:
            val = S.zero()
            r0 = rows[0]
            rest = rows[1:]
            for k, c in enumerate(cols):
                a = self.M.rows[r0][c]
                if not a.terms:
                    continue
                sub = self.det(rest, cols[:k] + cols[k + 1:])
                if not sub.terms:
                    continue
                term = a * sub
                val = val + term if k % 2 == 0 else val - term
            val = A.reduce(val)
        self.memo[key] = val
        return val


def minors(M: ModMatrix, u: int, cols=None):
    """All nonzero ``u x u`` minors (within ``cols`` if given), as polynomials."""
    cache = MinorCache(M)
    cols = range(M.ncols) if cols is None else cols
    out = []
    seen = set()
    for C in combinations(cols, u):
        for R in combinations(range(M.nrows), u):
            m = cache.det(R, C)
            if m.terms and m not in seen:
                seen.add(m)
                out.append(m)
    return out


def minor_ideal(M: ModMatrix, u: int) -> IdealA:
    """``I_u(M)``: unit ideal for ``u = 0``, zero beyond the matrix size."""
    A = M.ring
    if u < 0:
        raise ValueError("minor size must be nonnegative")
    if u == 0:
        return A.unit_ideal()
    if u > M.nrows or u > M.ncols:
        return A.zero_ideal()
    return IdealA(A, minors(M, u))


def matrix_rank(M: ModMatrix) -> int:
    """Largest ``u`` with ``I_u(M) != 0``."""
    for u in range(min(M.nrows, M.ncols), 0, -1):
        if not minor_ideal(M, u).is_zero():
            return u
    return 0


# -- Buchsbaum-Eisenbud ---------------------------------------------------------

def expected_ranks(F: FreeComplex):
    """``r_i = f_i - f_{i+1} + ... +- f_s`` for ``i = 1..s``."""
    s = F.length
    return {i: sum((-1) ** (j - i) * F.ranks[j] for j in range(i, s + 1)) for i in range(1, s + 1)}


@dataclass
class BESpot:
    i: int
    r: int
    minor_gens: list
    grade: float
    bound: int
    ok: bool
    rank: int | None = None

    def to_json(self):
        return {"i": self.i, "r": self.r, "minor_ideal": [str(g) for g in self.minor_gens],
                "grade": _grade_json(self.grade), "bound": self.bound, "ok": self.ok,
                "rank": self.rank}


@dataclass
class BEReport:
    spots: list
    acyclic: bool

    def to_json(self):
        return {"acyclic": self.acyclic, "spots": [s.to_json() for s in self.spots]}


def _grade_json(g):
    return "inf" if g == INF else int(g)


def buchsbaum_eisenbud_check(F: FreeComplex) -> BEReport:
    """Acyclicity via ``grade I_{r_i}(d_i) >= i``; ranks are confirmed when acyclic."""
    A = F.ring
    spots = []
    for i, r in expected_ranks(F).items():
        d = F.d(i)
        if r < 0:
            I = A.zero_ideal()
        else:
            I = minor_ideal(d, r)
        g = grade(I)
        spots.append(BESpot(i, r, [x.poly for x in I.gens], g, i, g >= i))
    acyclic = all(s.ok for s in spots)
    if acyclic:
        for s in spots:
            s.rank = matrix_rank(F.d(s.i))
            if s.rank != s.r:
                raise ArithmeticError(f"acyclic complex with rk d_{s.i} = {s.rank} != {s.r}")
    return BEReport(spots, acyclic)


# -- homology -----------------------------------------------------------------------

@dataclass
class HomologyDim:
    dim: int
    truncated: bool = False
    witness: dict | None = None

    def __int__(self):
        return self.dim


def homology_piece(F: FreeComplex, i: int) -> SubQuotient:
    A = F.ring
    s = F.length
    if not 0 <= i <= s:
        raise ValueError("homology index out of range")
    rank = F.ranks[i]
    shifts = F.degrees(i)
    one = (0,) * A.S.nvars
    if i == 0:
        K = [{(k, one): A.field.one()} for k in range(rank)]
    else:
        K = kernel_gens(F.d(i)).col_vecs()
    B = F.d(i + 1).col_vecs() if i < s else []
    return SubQuotient(A, rank, shifts, list(K), list(B))


def homology_dim(F: FreeComplex, i: int, degree_cap: int = 12) -> HomologyDim:
    """k-dimension of ``H_i(F)`` counted up to ``degree_cap`` above the
    generator degrees; ``truncated`` flags a nonzero top slice."""
    piece = homology_piece(F, i)
    wit = piece.nonzero_witness()
    if wit is None:
        return HomologyDim(0, False, None)
    cap = degree_cap + max(piece.shifts, default=0)
    d, trunc = piece.hilbert_dim(cap)
    return HomologyDim(max(d, 1), trunc, wit)


def is_exact_at(F: FreeComplex, i: int) -> bool:
    return homology_piece(F, i).is_zero()


# -- Eilenberg splitting ---------------------------------------------------------------

@dataclass
class SplitPair:
    """A cancelled summand ``0 -> A(-deg) --1--> A(-deg) -> 0`` between spots
    ``i`` and ``i-1``."""
    i: int
    degree: int


def _find_unit_pivot(F: FreeComplex):
    for i, d in enumerate(F.maps, start=1):
        for r, row in enumerate(d.rows):
            for c, x in enumerate(row):
                if x.constant_term():
                    if not x.is_constant():
                        raise ValueError(
                            f"entry ({r}, {c}) of d_{i} is a unit only after localization")
                    return i, r, c
    return None


def eilenberg_split(G: FreeComplex):
    """Split ``G`` into a minimal complex and a list of cancelled trivial pairs."""
    A = G.ring
    maps = [[list(row) for row in d.rows] for d in G.maps]
    degs = [list(G.degrees(i)) for i in range(G.length + 1)]
    pairs = []
    F = G
    while True:
        piv = _find_unit_pivot(F)
        if piv is None:
            break
        i, r, c = piv
        pairs.append(SplitPair(i, degs[i][c]))
        maps[i - 1] = schur_eliminate(maps[i - 1], r, c, A)
        if i < len(maps):
            del maps[i][c]
        if i >= 2:
            for row in maps[i - 2]:
                del row[r]
        del degs[i][c]
        del degs[i - 1][r]
        new_maps = []
        for j, rows in enumerate(maps, start=1):
            new_maps.append(ModMatrix(A, rows, len(degs[j - 1]), len(degs[j]),
                                      degs[j - 1], degs[j]))
        F = FreeComplex(A, new_maps, len(degs[0]), check=False)
    return F, pairs


def split_part(ring, pairs, length):
    """The split exact complex ``H`` assembled from cancelled pairs: each pair
    at spot ``i`` contributes ``A(-deg)`` to ``H_i`` and ``H_{i-1}`` joined by
    the identity."""
    A = ring
    src = {j: [p.degree for p in pairs if p.i == j] for j in range(1, length + 1)}
    degs = []
    for j in range(length + 1):
        # H_j: sources of pairs at spot j, then targets of pairs at spot j+1
        degs.append(src.get(j, []) + src.get(j + 1, []))
    maps = []
    for j in range(1, length + 1):
        rows = [[0] * len(degs[j]) for _ in range(len(degs[j - 1]))]
        off = len(src.get(j - 1, []))
        for k in range(len(src[j])):
            rows[off + k][k] = 1
        maps.append(ModMatrix(A, rows, len(degs[j - 1]), len(degs[j]), degs[j - 1], degs[j]))
    return FreeComplex(A, maps, len(degs[0]), check=True)
