"""Exact arithmetic in real quadratic fields Q(sqrt(d)).

Covers the irrational solution coordinates that occur in the root tables
(golden-ratio style surds over sqrt(5)).  Values are a + b*sqrt(d) with
rational a, b and a fixed square-free radicand d > 1; sign decisions are
exact, so Sturm chains and Gaussian elimination work over this field.

Text form matches the table-file tokens: ``(p+q*sqrt5)/r`` with integer
p, q, r, gcd(p, q, r) = 1 and r > 0; plain integers/fractions are accepted
where the surd part vanishes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt


def _is_square_free(d: int) -> bool:
    if d <= 1:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class Surd:
    """a + b*sqrt(d), exact."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if not _is_square_free(self.d):
            raise ValueError(f"radicand {self.d} is not square-free > 1")

    # -- helpers

    def _coerce(self, other):
        if isinstance(other, Surd):
            if other.d != self.d:
                if other.b == 0:
                    return Surd(other.a, 0, self.d)
                if self.b == 0:
                    raise ValueError("mixed radicands")
                raise ValueError(f"mixed radicands {self.d} and {other.d}")
            return other
        if isinstance(other, (int, Fraction)):
            return Surd(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    def is_rational(self) -> bool:
        return self.b == 0

    def rational_value(self) -> Fraction:
        if self.b != 0:
            raise ValueError("value is irrational")
        return self.a

    # -- ring/field ops

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Surd(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Surd(self.a * o.a + self.b * o.b * self.d,
                    self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conjugate(self) -> "Surd":
        return Surd(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        inv = Surd(o.a / n, -o.b / n, self.d)
        return self * inv

    def __rtruediv__(self, other):
        return Surd(Fraction(other), 0, self.d) / self

    def __pow__(self, n: int):
        if n < 0:
            return Surd(1, 0, self.d) / self ** (-n)
        out = Surd(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- order

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, Surd):
            o = self._coerce(other)
            return self.a == o.a and self.b == o.b
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 d (cannot tie, d square-free)
        if a * a > b * b * self.d:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def __lt__(self, other):
        o = self._coerce(other)
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        return (self - o).sign() >= 0

    def __abs__(self):
        return self if self.sign() >= 0 else -self

    # -- conversions

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def approx(self, digits: int = 30) -> Fraction:
        """Rational approximation within 10^-digits."""
        scale = 10 ** digits
        lo = Fraction(isqrt(self.d * scale * scale), scale)
        return self.a + self.b * (lo if self.b >= 0 else lo + Fraction(1, scale))

    def bounds(self, digits: int = 30) -> tuple[Fraction, Fraction]:
        scale = 10 ** digits
        r = isqrt(self.d * scale * scale)
        slo, shi = Fraction(r, scale), Fraction(r + 1, scale)
        if self.b >= 0:
            return self.a + self.b * slo, self.a + self.b * shi
        return self.a + self.b * shi, self.a + self.b * slo

    def minimal_polynomial(self, var: str = "x"):
        """Integer defining polynomial (degree 2, or 1 when rational)."""
        from .polynomials import UniPoly
        if self.b == 0:
            return UniPoly(var, (-self.a.numerator, self.a.denominator))
        # (x - a)^2 = b^2 d
        c0 = self.a * self.a - self.b * self.b * self.d
        p = UniPoly(var, (c0, -2 * self.a, Fraction(1)))
        return p.clear_denominators()

    def to_algebraic(self):
        """AlgebraicReal with a certified isolating interval."""
        from .realroots import AlgebraicReal
        poly = self.minimal_polynomial()
        if self.b == 0:
            raise ValueError("rational value; use Fraction directly")
        digits = 8
        while True:
            lo, hi = self.bounds(digits)
            if poly.eval(lo) != 0 and poly.eval(hi) != 0:
                slo = poly.eval(lo) > 0
                shi = poly.eval(hi) > 0
                if slo != shi:
                    return AlgebraicReal(poly, lo, hi)
            digits += 8

    # -- text

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        den = self.a.denominator
        den = den * self.b.denominator // gcd(den, self.b.denominator)
        p = int(self.a * den)
        q = int(self.b * den)
        g = gcd(gcd(abs(p), abs(q)), den)
        p, q, den = p // g, q // g, den // g
        sign = "-" if q < 0 else "+"
        return f"({p}{sign}{abs(q)}*sqrt{self.d})/{den}"

    __repr__ = __str__


_SURD_RE = re.compile(
    r"^\(\s*(?P<a>[+-]?\d+)?\s*(?P<sign>[+-])?\s*"
    r"(?:(?P<b>\d+)\*)?sqrt(?P<d>\d+)\s*\)\s*(?:/\s*(?P<den>\d+))?$")
_BARE_RE = re.compile(
    r"^(?P<a>[+-]?\d+)?(?P<sign>[+-])?(?:(?P<b>\d+)\*)?sqrt(?P<d>\d+)$")


def parse_surd(token: str, default_d: int = 5) -> Surd:
    """Parse ``(a+b*sqrtD)/c`` tokens (also bare ints and a/b fractions)."""
    token = token.strip()
    if "sqrt" not in token:
        if "/" in token:
            num, den = token.split("/")
            return Surd(Fraction(int(num), int(den)), 0, default_d)
        return Surd(Fraction(int(token)), 0, default_d)
    m = _SURD_RE.match(token) or _BARE_RE.match(token)
    if not m:
        raise ValueError(f"cannot parse surd token {token!r}")
    a = int(m.group("a") or 0)
    b = int(m.group("b") or 1)
    if m.group("sign") == "-":
        b = -b
    if m.group("a") is None and m.group("sign") is None:
        pass  # bare sqrtD
    d = int(m.group("d"))
    den = int(m.groupdict().get("den") or 1)
    return Surd(Fraction(a, den), Fraction(b, den), d)
