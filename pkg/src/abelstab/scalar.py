"""Exact arithmetic in Q(sqrt 3), extended slopes, and exact complex pairs."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

Rational = Union[int, Fraction]

_RAT = r"[+-]?\d+(?:/\d+)?"
_QUAD_RE = re.compile(
    rf"^(?:(?P<rat>{_RAT})(?P<irr>[+-]\d+(?:/\d+)?)\*s3"
    rf"|(?P<only_irr>{_RAT})\*s3"
    rf"|(?P<only_rat>{_RAT}))$"
)


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or an integer. Rejects floats and zero denominators."""
    text = text.strip()
    if not re.fullmatch(_RAT, text):
        raise ValueError(f"malformed rational: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in rational: {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(x: Rational) -> str:
    return str(Fraction(x))


@total_ordering
class QuadScalar:
    """The real number ``rat + irr*sqrt(3)`` with rational coordinates.

    Instances are immutable and always reduced (``Fraction`` keeps lowest
    terms), so equality and hashing are structural.
    """

    __slots__ = ("_rat", "_irr")

    def __init__(self, rat: Rational = 0, irr: Rational = 0) -> None:
        self._rat = Fraction(rat)
        self._irr = Fraction(irr)

    @property
    def rat(self) -> Fraction:
        return self._rat

    @property
    def irr(self) -> Fraction:
        return self._irr

    @classmethod
    def coerce(cls, x: QuadScalar | Rational) -> QuadScalar:
        if isinstance(x, QuadScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to QuadScalar")

    def is_rational(self) -> bool:
        return self._irr == 0

    def conjugate(self) -> QuadScalar:
        return QuadScalar(self._rat, -self._irr)

    def norm(self) -> Fraction:
        """Field norm ``rat**2 - 3*irr**2``; zero only for the zero element."""
        return self._rat * self._rat - 3 * self._irr * self._irr

    def sign(self) -> int:
        a, b = self._rat, self._irr
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the term with the larger square wins
        return sa if a * a > 3 * b * b else sb

    def __add__(self, other):
        try:
            o = QuadScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadScalar(self._rat + o._rat, self._irr + o._irr)

    __radd__ = __add__

    def __neg__(self) -> QuadScalar:
        return QuadScalar(-self._rat, -self._irr)

    def __pos__(self) -> QuadScalar:
        return self

    def __sub__(self, other):
        try:
            o = QuadScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadScalar(self._rat - o._rat, self._irr - o._irr)

    def __rsub__(self, other):
        try:
            o = QuadScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = QuadScalar.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self._rat, self._irr, o._rat, o._irr
        return QuadScalar(a * c + 3 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> QuadScalar:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 3)")
        return QuadScalar(self._rat / n, -self._irr / n)

    def __truediv__(self, other):
        try:
            o = QuadScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = QuadScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> QuadScalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadScalar(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        try:
            o = QuadScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self._rat == o._rat and self._irr == o._irr

    def __lt__(self, other) -> bool:
        try:
            o = QuadScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        if self._irr == 0:
            return hash(self._rat)
        return hash((self._rat, self._irr))

    def __bool__(self) -> bool:
        return bool(self._rat) or bool(self._irr)

    def __float__(self) -> float:
        return float(self._rat) + float(self._irr) * 3**0.5

    def __repr__(self) -> str:
        return f"QuadScalar({self})"

    def __str__(self) -> str:
        return format_quad(self)


def format_quad(x: QuadScalar) -> str:
    """Render as ``p/q``, ``r/s*s3`` or ``p/q+r/s*s3``."""
    if x.irr == 0:
        return format_rational(x.rat)
    if x.rat == 0:
        return f"{format_rational(x.irr)}*s3"
    sign = "+" if x.irr > 0 else "-"
    return f"{format_rational(x.rat)}{sign}{format_rational(abs(x.irr))}*s3"


def parse_quad(text: str) -> QuadScalar:
    m = _QUAD_RE.match(text.strip())
    if m is None:
        raise ValueError(f"malformed Q(sqrt 3) scalar: {text!r}")
    if m["only_rat"] is not None:
        return QuadScalar(parse_rational(m["only_rat"]))
    if m["only_irr"] is not None:
        return QuadScalar(0, parse_rational(m["only_irr"]))
    return QuadScalar(parse_rational(m["rat"]), parse_rational(m["irr"]))


# Named forms of the field operations.

def quad_add(x: QuadScalar, y: QuadScalar) -> QuadScalar:
    return x + y


def quad_mul(x: QuadScalar, y: QuadScalar) -> QuadScalar:
    return x * y


def quad_neg(x: QuadScalar) -> QuadScalar:
    return -x


def quad_inv(x: QuadScalar) -> QuadScalar:
    return x.inverse()


def quad_sign(x: QuadScalar) -> int:
    return x.sign()


SQRT3 = QuadScalar(0, 1)


@total_ordering
class ExtSlope:
    """A slope value: a finite element of Q(sqrt 3), or +/- infinity.

    Slopes of objects are never ``-inf``; that value exists only so interval
    endpoints such as ``(-inf, 0]`` share the same type.
    """

    __slots__ = ("_value", "_inf")

    def __init__(self, value: QuadScalar | Rational | None = None, inf: int = 0) -> None:
        if inf not in (-1, 0, 1):
            raise ValueError("inf must be -1, 0 or +1")
        if (value is None) != (inf != 0):
            raise ValueError("an ExtSlope is either finite or infinite")
        self._value = None if value is None else QuadScalar.coerce(value)
        self._inf = inf

    @classmethod
    def finite(cls, value: QuadScalar | Rational) -> ExtSlope:
        return cls(value)

    @property
    def value(self) -> QuadScalar:
        if self._value is None:
            raise ValueError("infinite slope has no finite value")
        return self._value

    @property
    def is_finite(self) -> bool:
        return self._inf == 0

    @property
    def is_plus_infinity(self) -> bool:
        return self._inf == 1

    def _key(self) -> tuple[int, QuadScalar]:
        return (self._inf, self._value if self._value is not None else QuadScalar(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, QuadScalar)):
            other = ExtSlope(other)
        if not isinstance(other, ExtSlope):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other) -> bool:
        if isinstance(other, (int, Fraction, QuadScalar)):
            other = ExtSlope(other)
        if not isinstance(other, ExtSlope):
            return NotImplemented
        if self._inf != other._inf:
            return self._inf < other._inf
        if self._inf != 0:
            return False
        return self.value < other.value

    def __hash__(self) -> int:
        return hash(self._key())

    def __str__(self) -> str:
        if self._inf == 1:
            return "+inf"
        if self._inf == -1:
            return "-inf"
        return str(self._value)

    def __repr__(self) -> str:
        return f"ExtSlope({self})"

    def __float__(self) -> float:
        if self._inf:
            return self._inf * float("inf")
        return float(self.value)


PLUS_INFINITY = ExtSlope(inf=1)
MINUS_INFINITY = ExtSlope(inf=-1)


def parse_slope(text: str) -> ExtSlope:
    t = text.strip()
    if t in ("+inf", "inf"):
        return PLUS_INFINITY
    if t == "-inf":
        return MINUS_INFINITY
    return ExtSlope(parse_quad(t))


class ExactComplex:
    """``re + i*im`` with both parts in Q(sqrt 3)."""

    __slots__ = ("re", "im")

    def __init__(self, re: QuadScalar | Rational = 0, im: QuadScalar | Rational = 0) -> None:
        object.__setattr__(self, "re", QuadScalar.coerce(re))
        object.__setattr__(self, "im", QuadScalar.coerce(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactComplex is immutable")

    def __add__(self, other: ExactComplex) -> ExactComplex:
        return ExactComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: ExactComplex) -> ExactComplex:
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> ExactComplex:
        return ExactComplex(-self.re, -self.im)

    def __mul__(self, other: ExactComplex) -> ExactComplex:
        return ExactComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def scale(self, k: QuadScalar | Rational) -> ExactComplex:
        return ExactComplex(self.re * k, self.im * k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactComplex):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"ExactComplex(re={self.re}, im={self.im})"

    def to_json(self) -> dict[str, str]:
        return {"re": str(self.re), "im": str(self.im)}
