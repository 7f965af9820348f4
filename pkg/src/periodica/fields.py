"""Exact scalar arithmetic: the rationals and prime fields GF(p).

Scalars are ``fractions.Fraction`` values over Q and plain ints in
``0..p-1`` over GF(p).  No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """The base field: Q (``p == 0``) or GF(p) for a prime p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p and not _is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        self.p = p

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def gf(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    # -- scalar construction -------------------------------------------------

    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def coerce(self, x):
        """Turn an int / Fraction / scalar-of-this-field into a scalar."""
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError("denominator vanishes in GF(p)")
            return x.numerator * pow(den, self.p - 2, self.p) % self.p
        return int(x) % self.p

    def parse(self, text: str):
        """Parse a scalar literal: an integer or a fraction like ``-3/7``."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(text))
        return self.coerce(value)

    def to_str(self, x) -> str:
        return str(x)

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if self.p:
            if a % self.p == 0:
                raise ZeroDivisionError("inverse of 0 in GF(p)")
            return pow(a, self.p - 2, self.p)
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return (a % self.p == 0) if self.p else a == 0

    def sign_pow(self, k: int):
        """(-1)**k as a scalar; the sign that shift-by-k puts on differentials."""
        return self.one() if k % 2 == 0 else self.neg(self.one())

    # ------------------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p == 0 else f"GF({self.p})"


QQ = Field.rationals()
