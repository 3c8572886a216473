"""Exact scalar fields: arbitrary-precision rationals and prime fields GF(p).

Every computation in this package runs over one of these two fields; there
are no floating-point numbers and no tolerances anywhere.  Rational scalars
are stdlib ``fractions.Fraction`` values (always in lowest terms, positive
denominator), prime-field scalars are :class:`GFElement` residues with the
canonical representative in ``0..p-1``.
"""

from __future__ import annotations

from fractions import Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class GFElement:
    """Residue mod a prime.  Supports field arithmetic via operators."""

    __slots__ = ("p", "v")

    def __init__(self, p: int, v: int):
        self.p = p
        self.v = v % p

    def __add__(self, other):
        return GFElement(self.p, self.v + other.v)

    def __sub__(self, other):
        return GFElement(self.p, self.v - other.v)

    def __mul__(self, other):
        return GFElement(self.p, self.v * other.v)

    def __truediv__(self, other):
        if other.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return GFElement(self.p, self.v * pow(other.v, self.p - 2, self.p))

    def __neg__(self):
        return GFElement(self.p, -self.v)

    def __eq__(self, other):
        return isinstance(other, GFElement) and self.p == other.p and self.v == other.v

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "GF(%d):%d" % (self.p, self.v)

    def __str__(self):
        return str(self.v)


class RationalField:
    """The field of rationals.  A single shared instance is exported as QQ."""

    char = 0
    name = "q"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def el(self, x) -> Fraction:
        return Fraction(x)

    def parse(self, text: str) -> Fraction:
        return Fraction(text)

    def fmt(self, x) -> str:
        return str(x)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """GF(p) for a prime p."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError("field modulus %r is not prime" % (p,))
        self.p = p
        self.char = p
        self.name = "gf:%d" % p
        self.zero = GFElement(p, 0)
        self.one = GFElement(p, 1)

    def el(self, x) -> GFElement:
        if isinstance(x, GFElement):
            if x.p != self.p:
                raise ValueError("element of GF(%d) used in GF(%d)" % (x.p, self.p))
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by %d" % self.p)
            return GFElement(self.p, x.numerator * pow(x.denominator, self.p - 2, self.p))
        return GFElement(self.p, int(x))

    def parse(self, text: str) -> GFElement:
        return self.el(Fraction(text))

    def fmt(self, x) -> str:
        return str(x.v)

    def __repr__(self):
        return "GF(%d)" % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(spec: str):
    """Parse a field spec: ``q`` for the rationals, ``gf:p`` for GF(p)."""
    spec = spec.strip().lower()
    if spec == "q":
        return QQ
    if spec.startswith("gf:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise ValueError("malformed field spec %r" % spec) from None
        return PrimeField(p)
    raise ValueError("unknown field spec %r (expected 'q' or 'gf:p')" % spec)
