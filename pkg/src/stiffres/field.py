"""Coefficient fields: the rationals and prime fields.

Coefficients are stored as raw numbers for speed: ``gmpy2.mpq`` over Q and
plain ``int`` residues in ``[0, p)`` over F_p.  A :class:`Field` carries the
characteristic and knows how to coerce, invert and print its scalars.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq, is_prime

MAX_PRIME = 2**31


class Field:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        p = int(p)
        if p:
            if p >= MAX_PRIME:
                raise ValueError(f"modulus {p} must be below 2^31")
            if p < 2 or not is_prime(p):
                raise ValueError(f"modulus {p} is not prime")
        self.p = p

    @classmethod
    def from_name(cls, name) -> "Field":
        """Parse ``"Q"``, ``"QQ"``, ``"GF(101)"``, ``"F101"``, ``"ZZ/101"`` or an int."""
        if isinstance(name, int):
            return cls(name)
        s = str(name).strip().replace(" ", "")
        if s.upper() in ("Q", "QQ"):
            return cls(0)
        for prefix in ("GF(", "F(", "ZZ/", "Z/", "GF", "F"):
            if s.upper().startswith(prefix):
                body = s[len(prefix):].rstrip(")")
                if body.isdigit():
                    return cls(int(body))
        raise ValueError(f"unknown field {name!r}")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"Field({self.name})"

    def coerce(self, x):
        p = self.p
        if p:
            if isinstance(x, (Fraction,)) or type(x).__name__ == "mpq":
                num, den = int(x.numerator), int(x.denominator)
                if den % p == 0:
                    raise ZeroDivisionError(f"denominator {den} vanishes mod {p}")
                return num * pow(den, -1, p) % p
            return int(x) % p
        if isinstance(x, str):
            return mpq(x)
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        return mpq(x)

    def zero(self):
        return 0 if self.p else mpq(0)

    def one(self):
        return 1 if self.p else mpq(1)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(a), -1, self.p)
        return 1 / mpq(a)

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def neg(self, a):
        return -a % self.p if self.p else -a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def random(self, rng, bound: int = 7):
        """A random nonzero scalar; over Q a small fraction."""
        if self.p:
            return rng.randrange(1, self.p)
        num = rng.choice([n for n in range(-bound, bound + 1) if n])
        return mpq(num, rng.randint(1, 3))

    def to_str(self, a) -> str:
        if self.p:
            a = int(a)
            # residues printed as symmetric representatives
            return str(a - self.p if a > self.p // 2 else a)
        return str(mpq(a))

    def to_json(self):
        return "Q" if self.p == 0 else f"GF({self.p})"
