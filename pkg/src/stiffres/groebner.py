"""Buchberger's algorithm for submodules of free modules over k[x_1..x_n].

A vector is a dict ``{(pos, exps): coeff}``; an ideal is the case where every
term sits in position 0.  Term orders are key functions: a larger key means a
larger term.  The engine is shared by ideal arithmetic, syzygies, module
membership and lifting.
"""

from __future__ import annotations

import heapq
from itertools import count
from operator import add, le, sub
from gmpy2 import mpq

MONOMIAL_ORDERS = ("degrevlex", "deglex", "lex")


def mono_key_fn(name: str):
    if name == "degrevlex":
        return lambda e: (sum(e), tuple(-a for a in reversed(e)))
    if name == "deglex":
        return lambda e: (sum(e), e)
    if name == "lex":
        return lambda e: e
    raise ValueError(f"unknown monomial order {name!r}")


class TermOrder:
    """Order on module terms ``(pos, exps)``.

    ``shifts`` gives per-position degree offsets (graded free modules).
    Positions below ``upper`` form an elimination block: every term there is
    larger than any term at a position ``>= upper``.  Ties are broken
    term-over-position with smaller positions larger.
    """

    __slots__ = ("mono", "shifts", "upper", "_mk", "_cache", "graded")

    def __init__(self, mono: str = "degrevlex", shifts=None, upper=None):
        self.mono = mono
        self.shifts = tuple(shifts) if shifts else ()
        self.upper = upper
        self._mk = mono_key_fn(mono)
        self.graded = mono != "lex"
        self._cache = {}

    def key(self, t):
        k = self._cache.get(t)
        if k is None:
            pos, e = t
            sh = self.shifts[pos] if pos < len(self.shifts) else 0
            if self.graded:
                k = (sum(e) + sh, self._mk(e), -pos)
            else:
                k = (self._mk(e), -pos)
            if self.upper is not None:
                k = (pos < self.upper,) + k
            self._cache[t] = k
        return k


def divides(a, b) -> bool:
    return all(map(le, a, b))


def lcm(a, b):
    return tuple(map(max, a, b))


def lead(vec, order: TermOrder):
    return max(vec, key=order.key)


def scale(vec, c, p):
    if p:
        return {t: v * c % p for t, v in vec.items()}
    return {t: v * c for t, v in vec.items()}


def make_monic(vec, order, p):
    t = lead(vec, order)
    c = vec[t]
    if c == 1:
        return vec
    inv = pow(int(c), -1, p) if p else 1 / mpq(c)
    return scale(vec, inv, p)


def add_vecs(f, g, p, c=1):
    """Return ``f + c*g``."""
    h = dict(f)
    for t, v in g.items():
        w = h.get(t, 0) + c * v
        if p:
            w %= p
        if w:
            h[t] = w
        else:
            h.pop(t, None)
    return h


def mul_term(vec, e, c, p):
    """Multiply a vector by the monomial ``c * x^e``."""
    out = {}
    for (pos, f), v in vec.items():
        w = v * c
        if p:
            w %= p
        if w:
            out[(pos, tuple(map(add, f, e)))] = w
    return out


class GroebnerBasis:
    """Incremental Buchberger computation.

    ``criteria=False`` disables every pair criterion (the naive mode used as a
    test oracle).  The product criterion is only applied when all generators
    live in one position, where it is valid.
    """

    def __init__(self, order: TermOrder, p: int, criteria: bool = True):
        self.order = order
        self.p = p
        self.criteria = criteria
        self.polys = []
        self.leads = []
        self.by_pos = {}
        self._pairs = []
        self._pending = set()
        self._tick = count()
        self._positions = set()
        self.complete_flag = True

    # -- reduction ---------------------------------------------------------
    def _find_reducer(self, t):
        pos, e = t
        for idx in self.by_pos.get(pos, ()):
            if all(map(le, self.leads[idx][1], e)):
                return idx
        return None

    def normal_form(self, vec, quotients=False):
        """Fully reduce ``vec``.  With ``quotients`` also return the list of
        ``(basis index, exps, coeff)`` multipliers used."""
        p = self.p
        key = self.order.key
        leads = self.leads
        polys = self.polys
        by_pos = self.by_pos
        f = dict(vec)
        rem = {}
        quo = [] if quotients else None
        while f:
            t = max(f, key=key)
            c = f[t]
            pos, e = t
            hit = None
            for idx in by_pos.get(pos, ()):
                if all(map(le, leads[idx][1], e)):
                    hit = idx
                    break
            if hit is None:
                rem[t] = f.pop(t)
                continue
            q = tuple(map(sub, e, leads[hit][1]))
            if quotients:
                quo.append((hit, q, c))
            for (gp, ge), gv in polys[hit].items():
                nt = (gp, tuple(map(add, ge, q)))
                w = f.get(nt, 0) - c * gv
                if p:
                    w %= p
                if w:
                    f[nt] = w
                else:
                    f.pop(nt, None)
        if quotients:
            return rem, quo
        return rem

    def reduces_to_zero(self, vec) -> bool:
        return not self.normal_form(vec)

    # -- basis growth ------------------------------------------------------
    def _append(self, vec):
        vec = make_monic(vec, self.order, self.p)
        t = lead(vec, self.order)
        idx = len(self.polys)
        self.polys.append(vec)
        self.leads.append(t)
        self._positions.update(u[0] for u in vec)
        for j in self.by_pos.get(t[0], ()):
            self._push_pair(j, idx)
        self.by_pos.setdefault(t[0], []).append(idx)
        self.complete_flag = False
        return idx

    def _push_pair(self, i, j):
        ti, tj = self.leads[i], self.leads[j]
        L = (ti[0], lcm(ti[1], tj[1]))
        heapq.heappush(self._pairs, (self.order.key(L), next(self._tick), i, j))
        self._pending.add((i, j))

    def add(self, vec, reduce_first=True):
        """Add a generator; returns False if it already reduced to zero."""
        if reduce_first:
            vec = self.normal_form(vec)
        if not vec:
            return False
        self._append(vec)
        return True

    def extend(self, vecs):
        for v in vecs:
            self.add(v)
        return self

    def _product_ok(self):
        return len(self._positions) <= 1

    def _chain(self, i, j, L):
        pos = self.leads[i][0]
        pend = self._pending
        for k in self.by_pos.get(pos, ()):
            if k == i or k == j:
                continue
            if not divides(self.leads[k][1], L):
                continue
            a = (i, k) if i < k else (k, i)
            b = (j, k) if j < k else (k, j)
            if a not in pend and b not in pend:
                return True
        return False

    def complete(self):
        """Run Buchberger until every S-pair reduces to zero."""
        p = self.p
        while self._pairs:
            _, _, i, j = heapq.heappop(self._pairs)
            self._pending.discard((i, j))
            ti, tj = self.leads[i], self.leads[j]
            L = lcm(ti[1], tj[1])
            if self.criteria:
                if self._product_ok() and all(a == 0 or b == 0 for a, b in zip(ti[1], tj[1])):
                    continue
                if self._chain(i, j, L):
                    continue
            mi = tuple(map(sub, L, ti[1]))
            mj = tuple(map(sub, L, tj[1]))
            s = mul_term(self.polys[i], mi, 1, p)
            s = add_vecs(s, mul_term(self.polys[j], mj, 1, p), p, -1)
            s = self.normal_form(s)
            if s:
                self._append(s)
        self.complete_flag = True
        return self

    # -- output ------------------------------------------------------------
    def reduced(self):
        """The reduced Groebner basis as a list of monic vectors, sorted by
        decreasing lead term."""
        if not self.complete_flag:
            self.complete()
        order = self.order
        idx = sorted(range(len(self.polys)), key=lambda k: order.key(self.leads[k]))
        keep = []
        for a in idx:
            pa, ea = self.leads[a]
            redundant = False
            for b in idx:
                if b == a:
                    continue
                pb, eb = self.leads[b]
                if pb == pa and divides(eb, ea) and (eb != ea or b < a):
                    redundant = True
                    break
            if not redundant:
                keep.append(a)
        minimal = GroebnerBasis(order, self.p, self.criteria)
        for a in keep:
            minimal._append_raw(self.polys[a], self.leads[a])
        out = []
        for a in range(len(minimal.polys)):
            v = minimal.polys[a]
            t = minimal.leads[a]
            rest = {u: c for u, c in v.items() if u != t}
            tail = minimal.normal_form(rest)
            tail[t] = v[t]
            out.append(tail)
        out.sort(key=lambda v: order.key(lead(v, order)), reverse=True)
        return out

    def _append_raw(self, vec, t):
        self.polys.append(vec)
        self.leads.append(t)
        self.by_pos.setdefault(t[0], []).append(len(self.polys) - 1)


def groebner(vecs, order: TermOrder, p: int, criteria: bool = True) -> GroebnerBasis:
    gb = GroebnerBasis(order, p, criteria)
    gb.extend(v for v in vecs if v)
    return gb.complete()


def poly_vec(poly_terms, pos=0):
    return {(pos, e): c for e, c in poly_terms.items()}
