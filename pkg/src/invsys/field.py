"""Exact coefficient fields: arbitrary-precision rationals and prime fields.

All polynomial and linear algebra is generic over the small field interface
below.  Rational values are `fractions.Fraction` (always in lowest terms with
positive denominator); prime-field values are plain ints in [0, p).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputSyntaxError


class Rationals:
    """The rational numbers."""

    name = "Q"
    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / a

    def parse(self, text):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputSyntaxError(f"bad rational literal {text!r}") from exc

    def render(self, a):
        return str(a)

    def signature(self):
        return ("Q",)

    def __eq__(self, other):
        return isinstance(other, (Rationals, PrimeField)) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field with p elements, p prime; elements are ints reduced mod p."""

    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(den, self.p - 2, self.p) % self.p
        raise TypeError(f"cannot coerce {x!r} into F{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return a * pow(b, self.p - 2, self.p) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        return self.div(1, a)

    def parse(self, text):
        try:
            return self.coerce(Fraction(text))
        except ValueError as exc:
            raise InputSyntaxError(f"bad field literal {text!r}") from exc

    def render(self, a):
        return str(a % self.p)

    def signature(self):
        return ("F", self.p)

    def __eq__(self, other):
        return isinstance(other, (Rationals, PrimeField)) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


def field_from_name(name):
    """Build a field from a descriptor such as 'Q', 'F7' or 'fp:7'."""
    text = name.strip()
    if text in ("Q", "q", "QQ"):
        return QQ
    lowered = text.lower()
    if lowered.startswith("fp:"):
        return PrimeField(int(text[3:]))
    if text[:1] in ("F", "f") and text[1:].isdigit():
        return PrimeField(int(text[1:]))
    raise InputSyntaxError(f"unknown field descriptor {name!r}")
