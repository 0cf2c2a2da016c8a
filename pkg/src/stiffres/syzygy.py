"""Syzygies and lifting by an elimination-order Groebner basis.

For columns ``f_1..f_m`` of a matrix over ``S/I`` (rows ``n``) we form the
module generated by ``(f_j ; e_j)`` in ``S^(n+m)`` together with ``g*e_i`` for
``g`` in the Groebner basis of ``I``.  With the upper block eliminated, the
basis elements supported in the lower block generate
``{u : sum u_j f_j in I*S^n}``, and the normal form of ``(w ; 0)`` reads off a
solution of ``sum c_j f_j = w`` when one exists.
"""

from __future__ import annotations

from .groebner import GroebnerBasis, TermOrder


class Elimination:
    def __init__(self, columns, nrows, ideal_gb, nvars, mono="degrevlex", p=0,
                 row_shifts=None, col_shifts=None, criteria=True):
        self.n = nrows
        self.m = len(columns)
        row_shifts = list(row_shifts) if row_shifts else [0] * nrows
        col_shifts = list(col_shifts) if col_shifts else [0] * self.m
        self.order = TermOrder(mono, row_shifts + col_shifts, upper=nrows)
        self.p = p
        gb = GroebnerBasis(self.order, p, criteria)
        n = nrows
        for i in range(n):
            for g in ideal_gb:
                gb.add({(i, e): c for e, c in g.items()}, reduce_first=False)
        zero = (0,) * nvars
        for j, col in enumerate(columns):
            v = dict(col)
            v[(n + j, zero)] = 1
            gb.add(v)
        gb.complete()
        self.gb = gb

    def kernel(self):
        """Generators of the syzygy module, as vectors indexed ``0..m-1``."""
        n = self.n
        out = []
        for v, t in zip(self.gb.polys, self.gb.leads):
            if t[0] >= n:
                out.append({(q - n, e): c for (q, e), c in v.items()})
        return out

    def solve(self, w):
        """Return coefficients ``c`` (vector indexed ``0..m-1``) with
        ``sum c_j f_j == w`` modulo ``I``, or ``None`` if ``w`` is not in the
        column span."""
        n = self.n
        r = self.gb.normal_form(w)
        p = self.p
        if any(q < n for (q, _) in r):
            return None
        return {(q - n, e): (-c % p if p else -c) for (q, e), c in r.items()}
