"""Graded free modules over A, matrices, syzygies, minimal free resolutions
and the Ext machinery built on them (depth, Bass numbers, induced maps).

Matrices hold normal-form polynomial entries.  A column is also viewed as a
vector ``{(row, exps): coeff}`` for the Groebner engine.  Free modules carry
generator degrees so that kernels, minimal generators and Hilbert function
counts stay graded.
"""

from __future__ import annotations

from dataclasses import dataclass
from operator import add

from .groebner import GroebnerBasis, TermOrder, divides
from .ideals import _monos
from .linalg import EchelonSpace
from .poly import Polynomial
from .quotient import QuotientRing, RingElem, IdealA
from .syzygy import Elimination


class TruncationNeeded(RuntimeError):
    """Raised when a computation would need a longer resolution than allowed."""


# -- free modules and matrices ------------------------------------------------

@dataclass(frozen=True)
class FreeMod:
    ring: QuotientRing
    rank: int
    degrees: tuple = None

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if self.degrees is None:
            object.__setattr__(self, "degrees", (0,) * self.rank)
        elif len(self.degrees) != self.rank:
            raise ValueError("degree list does not match rank")
        else:
            object.__setattr__(self, "degrees", tuple(self.degrees))

    def __eq__(self, other):
        return (isinstance(other, FreeMod) and self.rank == other.rank
                and self.degrees == other.degrees and self.ring == other.ring)

    def __hash__(self):
        return hash((self.rank, self.degrees))


def vec_degree(vec, shifts):
    """Degree of a homogeneous vector, ``None`` if zero, raises if mixed."""
    degs = {sum(e) + shifts[pos] for (pos, e) in vec}
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError("vector is not homogeneous")
    return degs.pop()


def try_vec_degree(vec, shifts):
    try:
        return vec_degree(vec, shifts)
    except ValueError:
        return None


class ModMatrix:
    """A map ``A^ncols -> A^nrows`` (entries ``rows[i][j]``)."""

    def __init__(self, ring: QuotientRing, rows, nrows=None, ncols=None,
                 target_degrees=None, source_degrees=None):
        self.ring = ring
        rows = [[ring(x).poly for x in row] for row in rows]
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError("matrix shape does not match its rank data")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = tuple(tuple(r) for r in rows)
        tdeg = tuple(target_degrees) if target_degrees is not None else (0,) * nrows
        self.target = FreeMod(ring, nrows, tdeg)
        if source_degrees is None:
            source_degrees = self._infer_source_degrees()
        self.source = FreeMod(ring, ncols, source_degrees)
        self._vecs = None

    # -- construction helpers ---------------------------------------------
    @classmethod
    def from_columns(cls, ring, cols, nrows, target_degrees=None, source_degrees=None):
        """Build from column vectors ``{(row, exps): coeff}``."""
        S = ring.S
        rows = [[S.zero() for _ in cols] for _ in range(nrows)]
        for j, v in enumerate(cols):
            parts = {}
            for (i, e), c in v.items():
                parts.setdefault(i, {})[e] = c
            for i, terms in parts.items():
                rows[i][j] = Polynomial(S, terms)
        return cls(ring, rows, nrows, len(cols), target_degrees, source_degrees)

    @classmethod
    def zero(cls, ring, nrows, ncols, target_degrees=None, source_degrees=None):
        S = ring.S
        return cls(ring, [[S.zero()] * ncols for _ in range(nrows)], nrows, ncols,
                   target_degrees, source_degrees)

    @classmethod
    def identity(cls, ring, n, degrees=None):
        S = ring.S
        rows = [[S.one() if i == j else S.zero() for j in range(n)] for i in range(n)]
        return cls(ring, rows, n, n, degrees, degrees)

    def _infer_source_degrees(self):
        tdeg = self.target.degrees
        out = []
        for j in range(self.ncols):
            d = None
            for i in range(self.nrows):
                f = self.rows[i][j]
                if f.terms:
                    lo = f.low_degree() + tdeg[i]
                    d = lo if d is None else min(d, lo)
            out.append(d if d is not None else (min(tdeg) if tdeg else 0))
        return tuple(out)

    # -- views --------------------------------------------------------------
    def entry(self, i, j) -> RingElem:
        return RingElem(self.ring, self.rows[i][j])

    def column_vec(self, j):
        return self.col_vecs()[j]

    def col_vecs(self):
        if self._vecs is None:
            vecs = []
            for j in range(self.ncols):
                v = {}
                for i in range(self.nrows):
                    for e, c in self.rows[i][j].terms.items():
                        v[(i, e)] = c
                vecs.append(v)
            self._vecs = vecs
        return self._vecs

    def column(self, j):
        return [self.entry(i, j) for i in range(self.nrows)]

    def is_zero(self) -> bool:
        return all(not f for row in self.rows for f in row)

    def is_homogeneous(self) -> bool:
        tdeg = self.target.degrees
        sdeg = self.source.degrees
        for i in range(self.nrows):
            for j in range(self.ncols):
                f = self.rows[i][j]
                if f.terms and any(sum(e) + tdeg[i] != sdeg[j] for e in f.terms):
                    return False
        return True

    def has_unit_entry(self) -> bool:
        return any(f.constant_term() for row in self.rows for f in row)

    def transpose(self) -> "ModMatrix":
        rows = [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return ModMatrix(self.ring, rows, self.ncols, self.nrows,
                         tuple(-d for d in self.source.degrees),
                         tuple(-d for d in self.target.degrees))

    def __matmul__(self, other: "ModMatrix") -> "ModMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in composition")
        A = self.ring
        S = A.S
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = S.zero()
                for k in range(self.ncols):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(A.reduce(acc))
            rows.append(row)
        return ModMatrix(A, rows, self.nrows, other.ncols,
                         self.target.degrees, other.source.degrees)

    def select_columns(self, cols) -> "ModMatrix":
        cols = list(cols)
        rows = [[row[j] for j in cols] for row in self.rows]
        return ModMatrix(self.ring, rows, self.nrows, len(cols), self.target.degrees,
                         tuple(self.source.degrees[j] for j in cols))

    def apply(self, v):
        """Image of a coordinate list ``v`` (ring elements) under the map."""
        A = self.ring
        out = []
        for i in range(self.nrows):
            acc = A.S.zero()
            for j in range(self.ncols):
                x = A(v[j]).poly
                if x.terms and self.rows[i][j].terms:
                    acc = acc + self.rows[i][j] * x
            out.append(RingElem(A, A.reduce(acc)))
        return out

    def __eq__(self, other):
        return (isinstance(other, ModMatrix) and self.ring == other.ring
                and self.rows == other.rows and self.nrows == other.nrows
                and self.ncols == other.ncols)

    def __hash__(self):
        return hash(self.rows)

    def to_strings(self):
        return [[str(f) for f in row] for row in self.rows]

    def __repr__(self):
        return f"ModMatrix({self.nrows}x{self.ncols}, {self.to_strings()})"


def reduce_vec(A: QuotientRing, vec):
    """Reduce each component of a vector modulo ``I``."""
    if not A.I.gens:
        return dict(vec)
    gb = A.I.gb
    A.I.basis
    parts = {}
    for (i, e), c in vec.items():
        parts.setdefault(i, {})[(0, e)] = c
    out = {}
    for i, part in parts.items():
        for (_, e), c in gb.normal_form(part).items():
            out[(i, e)] = c
    return out


def _ideal_vecs(A: QuotientRing, rank):
    return [{(i, e): c for e, c in g.items()} for i in range(rank) for g in A.I.basis_terms()]


class SubmoduleA:
    """Submodule of ``A^rank`` generated by vectors, via a Groebner basis of
    its preimage in ``S^rank``."""

    def __init__(self, A: QuotientRing, rank, gens, shifts=None):
        self.A = A
        self.rank = rank
        self.shifts = tuple(shifts) if shifts is not None else (0,) * rank
        self.order = TermOrder(A.S.order, self.shifts)
        self.gb = GroebnerBasis(self.order, A.S.p)
        for v in _ideal_vecs(A, rank):
            self.gb.add(v, reduce_first=False)
        self.gens = []
        for v in gens:
            self.add(v)

    def add(self, v) -> bool:
        self.gb.complete()
        r = self.gb.normal_form(v)
        if not r:
            return False
        self.gens.append(v)
        self.gb.add(r, reduce_first=False)
        return True

    def normal_form(self, v):
        self.gb.complete()
        return self.gb.normal_form(v)

    def contains(self, v) -> bool:
        return not self.normal_form(v)

    def leads(self):
        self.gb.complete()
        return self.gb.leads


def kernel_gens(f: ModMatrix) -> ModMatrix:
    """A matrix whose columns generate ``ker f`` (not necessarily minimally)."""
    A = f.ring
    S = A.S
    if f.ncols == 0:
        return ModMatrix.zero(A, 0, 0)
    elim = Elimination(f.col_vecs(), f.nrows, A.I.basis_terms(), S.nvars, S.order, S.p,
                       row_shifts=f.target.degrees, col_shifts=f.source.degrees)
    seen = set()
    cols = []
    for v in elim.kernel():
        v = reduce_vec(A, v)
        if not v:
            continue
        key = frozenset(v.items())
        if key in seen:
            continue
        seen.add(key)
        cols.append(v)
    sdeg = []
    for v in cols:
        d = try_vec_degree(v, f.source.degrees)
        sdeg.append(d if d is not None else 0)
    return ModMatrix.from_columns(A, cols, f.ncols, f.source.degrees, sdeg)


def minimize_columns(A: QuotientRing, vecs, rank, shifts):
    """Greedy minimal generating set of the graded submodule spanned by
    homogeneous ``vecs``: process by degree, keep what is not yet generated."""
    items = []
    for v in vecs:
        v = reduce_vec(A, v)
        if not v:
            continue
        d = vec_degree(v, shifts)
        items.append((d, v))
    # stable: equal degrees keep the caller's order
    items.sort(key=lambda t: t[0])
    sub = SubmoduleA(A, rank, [], shifts)
    kept, degs = [], []
    for d, v in items:
        if sub.add(v):
            kept.append(v)
            degs.append(d)
    return kept, degs


def _dense(M: ModMatrix):
    return [list(r) for r in M.rows]


def schur_eliminate(rows, r, c, ring):
    """Remove row ``r`` and column ``c`` around a constant pivot."""
    A = ring
    u = rows[r][c]
    inv = A.field.inv(u.constant_term())
    out = []
    for i, row in enumerate(rows):
        if i == r:
            continue
        factor = row[c].scale(inv) if row[c].terms else None
        new = []
        for j, x in enumerate(row):
            if j == c:
                continue
            if factor is not None and rows[r][j].terms:
                x = A.reduce(x - factor * rows[r][j])
            new.append(x)
        out.append(new)
    return out


def find_constant_pivot(rows):
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if x.terms and x.is_constant():
                return i, j
    return None


# -- presented modules and resolutions ------------------------------------------

class PresentedModule:
    """``M = coker(P)`` for ``P: A^m -> A^n``."""

    def __init__(self, P: ModMatrix):
        self.P = P
        self.ring = P.ring
        self._minimal = None

    @property
    def ngens(self) -> int:
        return self.P.nrows

    @property
    def degrees(self):
        return self.P.target.degrees

    @classmethod
    def from_rows(cls, ring, rows, ngens=None, degrees=None):
        if ngens is None:
            ngens = len(rows)
        return cls(ModMatrix(ring, rows, ngens, len(rows[0]) if rows else 0, degrees))

    @classmethod
    def free(cls, ring, rank, degrees=None):
        return cls(ModMatrix.zero(ring, rank, 0, degrees, ()))

    @classmethod
    def cyclic(cls, ideal: IdealA):
        """``A/c``."""
        A = ideal.ring
        gens = [g for g in ideal.gens]
        return cls(ModMatrix(A, [gens], 1, len(gens), (0,)))

    @classmethod
    def residue_field(cls, ring):
        return cls.cyclic(ring.maximal_ideal())

    def minimal_presentation(self) -> ModMatrix:
        """Presentation with no constant entries and minimal relations."""
        if self._minimal is None:
            A = self.ring
            P = self.P
            if not P.is_homogeneous():
                raise ValueError("presentation matrix is not homogeneous")
            rows = _dense(P)
            tdeg = list(P.target.degrees)
            ncols = P.ncols
            while True:
                piv = find_constant_pivot(rows)
                if piv is None:
                    break
                r, c = piv
                rows = schur_eliminate(rows, r, c, A)
                del tdeg[r]
                ncols -= 1
            n = len(tdeg)
            if n == 0:
                self._minimal = ModMatrix.zero(A, 0, 0)
                return self._minimal
            tmp = ModMatrix(A, rows, n, ncols, tdeg) if ncols else ModMatrix.zero(A, n, 0, tdeg, ())
            kept, degs = minimize_columns(A, tmp.col_vecs(), n, tuple(tdeg))
            self._minimal = ModMatrix.from_columns(A, kept, n, tdeg, degs)
        return self._minimal

    def minimal_generator_count(self) -> int:
        return self.minimal_presentation().nrows

    def is_zero(self) -> bool:
        return self.minimal_generator_count() == 0

    def __repr__(self):
        return f"PresentedModule(coker {self.P.nrows}x{self.P.ncols})"


@dataclass
class Resolution:
    module: PresentedModule
    maps: list
    minimal: bool = True
    complete: bool = False

    @property
    def length(self) -> int:
        return len(self.maps)

    @property
    def ranks(self):
        if not self.maps:
            return [self.module.minimal_generator_count()]
        return [self.maps[0].nrows] + [d.ncols for d in self.maps]

    def degrees(self, i):
        if i == 0:
            return self.maps[0].target.degrees if self.maps else self.module.minimal_presentation().target.degrees
        return self.maps[i - 1].source.degrees

    def differential(self, i) -> ModMatrix:
        """``d_i`` (1-based); beyond a complete resolution returns the zero map."""
        if 1 <= i <= len(self.maps):
            return self.maps[i - 1]
        if self.complete and i > len(self.maps):
            A = self.module.ring
            rank_t = self.ranks[-1] if i == len(self.maps) + 1 else 0
            tdeg = self.degrees(len(self.maps)) if i == len(self.maps) + 1 else ()
            return ModMatrix.zero(A, rank_t, 0, tdeg, ())
        raise TruncationNeeded(f"resolution computed only to length {len(self.maps)}")

    def rank(self, i) -> int:
        r = self.ranks
        if i < len(r):
            return r[i]
        if self.complete:
            return 0
        raise TruncationNeeded(f"resolution computed only to length {len(self.maps)}")


def minimal_resolution(M: PresentedModule, max_len: int, check_complete: bool = True) -> Resolution:
    """Minimal graded free resolution of ``M`` with at most ``max_len`` maps.

    ``complete`` is set when the last computed map is injective; with
    ``check_complete`` that kernel is computed even at the length limit.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    res = Resolution(M, [], True, False)
    return extend_resolution(res, max_len, check_complete)


def extend_resolution(res: Resolution, max_len: int, check_complete: bool = True) -> Resolution:
    """Continue ``res`` in place up to ``max_len`` maps."""
    if res.complete:
        return res
    A = res.module.ring
    if not res.maps:
        d1 = res.module.minimal_presentation()
        if d1.nrows == 0 or d1.ncols == 0:
            res.complete = True
            return res
        if max_len == 0:
            return res
        res.maps.append(d1)
    while True:
        if len(res.maps) >= max_len and not check_complete:
            return res
        current = res.maps[-1]
        K = kernel_gens(current)
        kept, degs = minimize_columns(A, K.col_vecs(), current.ncols, current.source.degrees)
        if not kept:
            res.complete = True
            return res
        if len(res.maps) >= max_len:
            return res
        res.maps.append(ModMatrix.from_columns(A, kept, current.ncols,
                                               current.source.degrees, degs))


def resolution_of_k(A: QuotientRing, length: int) -> Resolution:
    """Minimal resolution of the residue field with at least ``length`` maps
    (fewer only when complete).  Computed once per ring and extended."""
    res = A._res_k
    if res is None:
        res = Resolution(residue_field_module(A), [], True, False)
        A._res_k = res
    if not res.complete and res.length < length:
        extend_resolution(res, length, check_complete=False)
    return res


# -- subquotients and Ext ---------------------------------------------------------

def _block_diag(A, P: ModMatrix, copies, shift_per_copy):
    """``Id_copies (x) P`` with per-copy degree shifts."""
    a = P.nrows
    cols = []
    sdeg = []
    for l in range(copies):
        for j, v in enumerate(P.col_vecs()):
            cols.append({(l * a + i, e): c for (i, e), c in v.items()})
            sdeg.append(P.source.degrees[j] + shift_per_copy[l])
    return cols, sdeg


class SubQuotient:
    """``K / B`` inside ``A^rank`` (both given by generators, ``B`` inside ``K``)."""

    def __init__(self, A, rank, shifts, K, B):
        self.A = A
        self.rank = rank
        self.shifts = tuple(shifts)
        self.Bmod = SubmoduleA(A, rank, B, shifts)
        self.K = [v for v in K if v]
        self._basis = None

    def is_zero(self) -> bool:
        return all(self.Bmod.contains(v) for v in self.K)

    def nonzero_witness(self):
        for v in self.K:
            if not self.Bmod.contains(v):
                return v
        return None

    def basis(self):
        """k-basis assuming ``m*K`` lies in ``B`` (true for ``Ext(k, -)``):
        the independent normal forms among the generators of ``K``.  Returns
        the list of chosen cocycles."""
        if self._basis is None:
            space = EchelonSpace(self.A.field)
            chosen, slots = [], {}
            for v in self.K:
                nf = self.Bmod.normal_form(v)
                if not nf:
                    continue
                vid = space.count
                if space.add(nf):
                    slots[vid] = len(chosen)
                    chosen.append(v)
            self._basis = chosen
            self._space = space
            self._slots = slots
        return self._basis

    def coordinates(self, v):
        """Coordinates (a list over k) of the class of ``v`` in :meth:`basis`."""
        basis = self.basis()
        F = self.A.field
        out = [F.zero()] * len(basis)
        nf = self.Bmod.normal_form(v)
        if not nf:
            return out
        coords = self._space.coordinates(nf)
        if coords is None:
            raise ValueError("class is not in the span of the chosen basis")
        for vid, c in coords.items():
            out[self._slots[vid]] = c
        return out

    def dim_killed_by_m(self) -> int:
        return len(self.basis())

    def hilbert_dim(self, degree_cap: int):
        """``sum_{t <= cap} dim (K/B)_t``, and whether degree ``cap`` is nonzero."""
        Kmod = SubmoduleA(self.A, self.rank, list(self.Bmod.gens) + self.K, self.shifts)
        lo_total, lo_top = _std_count(self.Bmod.leads(), self.rank, self.shifts, degree_cap, self.A)
        hi_total, hi_top = _std_count(Kmod.leads(), self.rank, self.shifts, degree_cap, self.A)
        return lo_total - hi_total, (lo_top - hi_top) > 0


def _std_count(leads, rank, shifts, cap, A):
    n = A.S.nvars
    by_pos = {}
    for pos, e in leads:
        by_pos.setdefault(pos, []).append(e)
    total = 0
    top = 0
    for pos in range(rank):
        ls = by_pos.get(pos, [])
        for d in range(0, cap - shifts[pos] + 1):
            cnt = 0
            for e in _monos(n, d):
                if not any(divides(l, e) for l in ls):
                    cnt += 1
            total += cnt
            if d == cap - shifts[pos]:
                top += cnt
    return total, top


def hom_complex_piece(res: Resolution, M: PresentedModule, i: int) -> SubQuotient:
    """``Ext^i(N, M)`` as ``ker / im`` inside ``M^{f_i}`` for ``res`` resolving ``N``."""
    A = M.ring
    P = M.P
    a = P.nrows
    mdeg = P.target.degrees
    fi = res.rank(i)
    if fi == 0:
        return SubQuotient(A, 0, (), [], [])
    deg_i = res.degrees(i)
    shifts = [mdeg[al] - deg_i[l] for l in range(fi) for al in range(a)]
    rank = a * fi
    Qi, _ = _block_diag(A, P, fi, [-deg_i[l] for l in range(fi)])

    # outgoing map M^{f_i} -> M^{f_{i+1}}
    d_out = res.differential(i + 1)
    fo = d_out.ncols
    if fo == 0:
        K = [{(k, (0,) * A.S.nvars): A.field.one()} for k in range(rank)]
    else:
        deg_o = d_out.source.degrees
        cols = []
        for l in range(fi):
            for al in range(a):
                v = {}
                for k in range(fo):
                    for e, c in d_out.rows[l][k].terms.items():
                        v[(k * a + al, e)] = c
                cols.append(v)
        Qo, Qo_deg = _block_diag(A, P, fo, [-deg_o[k] for k in range(fo)])
        out_shifts = [mdeg[al] - deg_o[k] for k in range(fo) for al in range(a)]
        src_shifts = list(shifts) + Qo_deg
        elim = Elimination(cols + Qo, a * fo, A.I.basis_terms(), A.S.nvars, A.S.order, A.S.p,
                           row_shifts=out_shifts, col_shifts=src_shifts)
        K = []
        for v in elim.kernel():
            u = {(q, e): c for (q, e), c in v.items() if q < rank}
            u = reduce_vec(A, u)
            if u:
                K.append(u)
    # incoming image from M^{f_{i-1}}
    B = list(Qi)
    if i >= 1:
        d_in = res.differential(i)
        fprev = d_in.nrows
        for l in range(fprev):
            for al in range(a):
                v = {}
                for k in range(fi):
                    for e, c in d_in.rows[l][k].terms.items():
                        v[(k * a + al, e)] = c
                if v:
                    B.append(v)
    return SubQuotient(A, rank, shifts, K, B)


def _ext_resolution(N: PresentedModule, i: int) -> Resolution:
    A = N.ring
    if _is_residue_field(N):
        return resolution_of_k(A, i + 1)
    res = getattr(N, "_res", None)
    if res is None:
        res = Resolution(N, [], True, False)
        N._res = res
    if not res.complete and res.length < i + 1:
        extend_resolution(res, i + 1, check_complete=False)
    return res


def _is_residue_field(N: PresentedModule) -> bool:
    return getattr(N, "_is_k", False)


def ext_piece(N: PresentedModule, M: PresentedModule, i: int) -> SubQuotient:
    if i < 0:
        raise ValueError("i must be nonnegative")
    res = _ext_resolution(N, i)
    if not res.complete and res.length < i + 1:
        raise TruncationNeeded("resolution budget exceeded")
    return hom_complex_piece(res, M, i)


@dataclass
class ExtDim:
    dim: int
    nonzero: bool
    truncated: bool = False


def ext_dim(N: PresentedModule, M: PresentedModule, i: int, degree_cap: int = 12) -> ExtDim:
    """k-dimension of ``Ext^i(N, M)``; when the module is not finite length
    the count is cut at ``degree_cap`` and ``truncated`` is set."""
    piece = ext_piece(N, M, i)
    if piece.is_zero():
        return ExtDim(0, False, False)
    if _is_residue_field(N):
        return ExtDim(piece.dim_killed_by_m(), True, False)
    cap = degree_cap + max((abs(s) for s in piece.shifts), default=0)
    d, trunc = piece.hilbert_dim(cap)
    return ExtDim(d, True, trunc)


def ext_vanishes(N, M, i) -> bool:
    return ext_piece(N, M, i).is_zero()


def first_nonvanishing_ext(N: PresentedModule, M: PresentedModule, limit: int):
    """Least ``i <= limit`` with ``Ext^i(N, M) != 0``, or ``None``."""
    for i in range(limit + 1):
        res = _ext_resolution(N, i)
        if res.complete and i > res.length:
            return None
        if not hom_complex_piece(res, M, i).is_zero():
            return i
    return None


def residue_field_module(A: QuotientRing) -> PresentedModule:
    k = A._cache.get("k")
    if k is None:
        k = PresentedModule.residue_field(A)
        k._is_k = True
        A._cache["k"] = k
    return k


def depth_module(M: PresentedModule) -> int:
    """``min{i : Ext^i(k, M) != 0}``."""
    A = M.ring
    if M.is_zero():
        raise ValueError("depth of the zero module")
    k = residue_field_module(A)
    for i in range(A.dim + 1):
        if not ext_piece(k, M, i).is_zero():
            return i
    raise ArithmeticError("no nonvanishing Ext(k, M) up to dim A; engine error")


def bass_number(i: int, M: PresentedModule) -> int:
    """``mu^i(m, M) = dim_k Ext^i(k, M)``."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    k = residue_field_module(M.ring)
    piece = ext_piece(k, M, i)
    if piece.is_zero():
        return 0
    return piece.dim_killed_by_m()


EXCEEDS = "exceeds bound"


def proj_dim(M: PresentedModule, bound: int):
    """Length of the minimal resolution, or ``"exceeds bound"``."""
    res = minimal_resolution(M, bound)
    if res.complete:
        return res.length
    return EXCEEDS


def is_surjective(p: ModMatrix, M: PresentedModule) -> bool:
    A = M.ring
    sub = SubmoduleA(A, M.ngens, list(p.col_vecs()) + list(M.P.col_vecs()), M.degrees)
    one = (0,) * A.S.nvars
    return all(sub.contains({(i, one): A.field.one()}) for i in range(M.ngens))


def induced_ext_map(p: ModMatrix, M: PresentedModule, i: int):
    """Matrix over k (list of rows) of ``Ext^i(k, A^t) -> Ext^i(k, M)``
    induced by the surjection ``p: A^t -> M``, on the bases fixed by the
    minimal resolution of k."""
    A = M.ring
    if p.nrows != M.ngens:
        raise ValueError("surjection target does not match the module's generators")
    if not is_surjective(p, M):
        raise ValueError("map is not surjective onto the module")
    k = residue_field_module(A)
    src = PresentedModule.free(A, p.ncols, p.source.degrees)
    src_piece = ext_piece(k, src, i)
    tgt_piece = ext_piece(k, M, i)
    src_basis = src_piece.basis()
    tgt_basis = tgt_piece.basis()
    t = p.ncols
    a = M.ngens
    pcols = p.col_vecs()
    P = A.field.p
    cols = []
    for v in src_basis:
        w = {}
        for (q, e), c in v.items():
            l, s = divmod(q, t)
            for (r, e2), c2 in pcols[s].items():
                key = (l * a + r, tuple(map(add, e, e2)))
                val = w.get(key, 0) + c * c2
                if P:
                    val %= P
                if val:
                    w[key] = val
                else:
                    w.pop(key, None)
        cols.append(tgt_piece.coordinates(reduce_vec(A, w)))
    return [[cols[j][r] for j in range(len(cols))] for r in range(len(tgt_basis))]
