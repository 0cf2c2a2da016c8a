"""Sparse multivariate polynomials over a coefficient field."""

from __future__ import annotations

import random
from dataclasses import dataclass
from operator import add

from .field import Field
from .groebner import MONOMIAL_ORDERS, TermOrder, mono_key_fn


@dataclass(frozen=True)
class Monomial:
    exps: tuple

    @property
    def degree(self) -> int:
        return sum(self.exps)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(map(add, self.exps, other.exps)))


class PolyRing:
    """k[x_1, ..., x_n] with a fixed monomial order."""

    def __init__(self, field: Field, variables, order: str = "degrevlex"):
        variables = tuple(str(v) for v in variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"variable names not distinct: {variables}")
        if order not in MONOMIAL_ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.field = field
        self.vars = variables
        self.order = order
        self.nvars = len(variables)
        self._mono_key = mono_key_fn(order)
        self.term_order = TermOrder(order)

    @property
    def p(self) -> int:
        return self.field.p

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.vars == other.vars and self.order == other.order)

    def __hash__(self):
        return hash((self.field, self.vars, self.order))

    def __repr__(self):
        return f"PolyRing({self.field.name}[{', '.join(self.vars)}], {self.order})"

    def mono_key(self, e):
        return self._mono_key(e)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name_or_index) -> "Polynomial":
        i = self.vars.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one()})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, c=1) -> "Polynomial":
        c = self.field.coerce(c)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def parse(self, text: str) -> "Polynomial":
        from .parser import parse_polynomial
        return parse_polynomial(text, self)

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring != self:
                raise ValueError("polynomial from a different ring")
            return x
        if isinstance(x, str):
            return self.parse(x)
        return self.const(x)

    def monomials_of_degree(self, d: int):
        n = self.nvars
        if n == 0:
            if d == 0:
                yield ()
            return

        def rec(i, left):
            if i == n - 1:
                yield (left,)
                return
            for a in range(left, -1, -1):
                for rest in rec(i + 1, left - a):
                    yield (a,) + rest

        yield from rec(0, d)

    def random_form(self, degree: int, rng: random.Random) -> "Polynomial":
        """A random homogeneous polynomial of the given degree."""
        terms = {}
        for e in self.monomials_of_degree(degree):
            c = rng.choice([0, 1, -1, 2, -2, None])
            c = self.field.random(rng) if c is None else self.field.coerce(c)
            if c:
                terms[e] = c
        if not terms and degree >= 0:
            e = next(iter(self.monomials_of_degree(degree)))
            terms[e] = self.field.one()
        return Polynomial(self, terms)


class Polynomial:
    """Immutable polynomial: ``terms`` maps exponent tuples to nonzero scalars."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- structure ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        """Terms as ``(Monomial, coeff)`` pairs, strictly decreasing."""
        key = self.ring.mono_key
        return [(Monomial(e), self.terms[e]) for e in sorted(self.terms, key=key, reverse=True)]

    def lead_exps(self):
        return max(self.terms, key=self.ring.mono_key)

    def lead_coeff(self):
        return self.terms[self.lead_exps()]

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def low_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero())

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def support(self):
        """Indices of variables that occur."""
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.p
        t = dict(self.terms)
        for e, c in other.terms.items():
            w = t.get(e, 0) + c
            if p:
                w %= p
            if w:
                t[e] = w
            else:
                t.pop(e, None)
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {e: (-c % p if p else -c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        p = self.ring.p
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(map(add, e1, e2))
                w = t.get(e, 0) + c1 * c2
                if p:
                    w %= p
                if w:
                    t[e] = w
                else:
                    t.pop(e, None)
        return Polynomial(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        c = self.ring.field.coerce(c)
        p = self.ring.p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: (v * c % p if p else v * c) for e, v in self.terms.items()})

    def monic(self) -> "Polynomial":
        return self.scale(self.ring.field.inv(self.lead_coeff())) if self.terms else self

    def divexact(self, g: "Polynomial") -> "Polynomial":
        """Exact quotient ``self / g``; raises if ``g`` does not divide."""
        if not g.terms:
            raise ZeroDivisionError("division by zero polynomial")
        ring = self.ring
        F = ring.field
        ge = g.lead_exps()
        gc_inv = F.inv(g.terms[ge])
        f = self
        q = {}
        while f.terms:
            fe = f.lead_exps()
            d = tuple(a - b for a, b in zip(fe, ge))
            if min(d, default=0) < 0:
                raise ArithmeticError("polynomial division is not exact")
            c = F.mul(f.terms[fe], gc_inv)
            q[d] = c
            f = f - Polynomial(ring, {d: c}) * g
        return Polynomial(ring, q)

    # -- comparison / display ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if other == 0:
            return not self.terms
        try:
            return self == self.ring.const(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.ring.field
        out = []
        for m, c in self.sorted_terms():
            cs = F.to_str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            mono = "*".join(
                (v if a == 1 else f"{v}^{a}") for v, a in zip(self.ring.vars, m.exps) if a
            )
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"

    def to_vec(self, pos: int = 0):
        return {(pos, e): c for e, c in self.terms.items()}

    @classmethod
    def from_vec(cls, ring, vec, pos=0):
        return cls(ring, {e: c for (q, e), c in vec.items() if q == pos})
