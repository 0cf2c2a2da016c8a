"""Exact linear algebra over the coefficient field.

Vectors are sparse dicts ``{index: scalar}`` with arbitrary hashable indices.
"""

from __future__ import annotations


class EchelonSpace:
    """Incrementally built subspace with coordinates relative to the vectors
    that were inserted."""

    def __init__(self, field):
        self.F = field
        self.rows = []      # (pivot, vector, combination over inserted ids)
        self.count = 0

    def _reduce(self, v, combo):
        F = self.F
        v = dict(v)
        combo = dict(combo)
        for piv, row, rc in self.rows:
            c = v.get(piv)
            if c:
                for k, a in row.items():
                    w = F.sub(v.get(k, 0), F.mul(c, a))
                    if w:
                        v[k] = w
                    else:
                        v.pop(k, None)
                for k, a in rc.items():
                    w = F.sub(combo.get(k, 0), F.mul(c, a))
                    if w:
                        combo[k] = w
                    else:
                        combo.pop(k, None)
        return v, combo

    def add(self, v) -> bool:
        """Insert ``v``; returns True if it was independent.  Every call gets
        an id (0, 1, ...) regardless of the outcome."""
        F = self.F
        vid = self.count
        self.count += 1
        r, combo = self._reduce(v, {vid: F.one()})
        if not r:
            return False
        piv = min(r, key=_sort_key)
        inv = F.inv(r[piv])
        r = {k: F.mul(a, inv) for k, a in r.items()}
        combo = {k: F.mul(a, inv) for k, a in combo.items()}
        # keep rows fully reduced so coordinates are read off directly
        new_rows = []
        for p2, row, rc in self.rows:
            c = row.get(piv)
            if c:
                row = dict(row)
                rc = dict(rc)
                for k, a in r.items():
                    w = F.sub(row.get(k, 0), F.mul(c, a))
                    if w:
                        row[k] = w
                    else:
                        row.pop(k, None)
                for k, a in combo.items():
                    w = F.sub(rc.get(k, 0), F.mul(c, a))
                    if w:
                        rc[k] = w
                    else:
                        rc.pop(k, None)
            new_rows.append((p2, row, rc))
        new_rows.append((piv, r, combo))
        self.rows = new_rows
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, v) -> bool:
        r, _ = self._reduce(v, {})
        return not r

    def coordinates(self, v):
        """Express ``v`` as a combination of inserted vectors (by id), or None."""
        r, combo = self._reduce(v, {})
        if r:
            return None
        F = self.F
        out = {}
        for k, a in combo.items():
            w = F.neg(a)
            if w:
                out[k] = w
        return out


def _sort_key(k):
    return repr(k)


def rank(field, vectors) -> int:
    space = EchelonSpace(field)
    for v in vectors:
        space.add(v)
    return space.rank


def matrix_rank(field, rows) -> int:
    """Rank of a dense matrix given as a list of rows."""
    return rank(field, [{j: a for j, a in enumerate(row) if a} for row in rows])
