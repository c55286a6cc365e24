"""Exact arithmetic: rationals and real quadratic extensions Q(sqrt d).

Rationals are :class:`fractions.Fraction`.  :class:`QuadExt` holds
``a + b*sqrt(d)`` with ``d`` squarefree, and ``d == 0`` whenever ``b == 0``,
so structural equality is exact equality.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "Fraction",
    "QuadExt",
    "RadicandMismatchError",
    "as_fraction",
    "squarefree_split",
    "normalize_radicand",
    "quad_mul",
    "quad_inv",
    "quad_pow",
    "quad_to_float",
    "format_fraction",
    "parse_fraction",
    "format_quad",
    "parse_quad",
    "SQRT5",
    "PHI",
]

RationalLike = Union[int, Fraction]


class RadicandMismatchError(ValueError):
    """Arithmetic between elements of two different quadratic fields."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` squarefree."""
    if n < 0:
        raise ValueError("radicand must be nonnegative")
    if n == 0:
        return 0, 0
    s = 1
    d = 1
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    d *= rest
    return s, d


def _is_squarefree(d: int) -> bool:
    return squarefree_split(d)[0] == 1


class QuadExt:
    """Immutable element ``a + b*sqrt(d)`` of a real quadratic field."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0, d: int = 0):
        a = as_fraction(a)
        b = as_fraction(b)
        d = int(d)
        if d < 0:
            raise ValueError("only real quadratic fields are supported")
        if b and d == 0:
            raise ValueError("nonzero sqrt coefficient needs a radicand d >= 1")
        if d == 1:
            a, b, d = a + b, Fraction(0), 0
        elif d > 1 and not _is_squarefree(d):
            raise ValueError(f"radicand {d} is not squarefree; use normalize_radicand")
        if b == 0:
            d = 0
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_b", b)
        object.__setattr__(self, "_d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> "QuadExt":
        # caller guarantees d squarefree (or 0)
        obj = object.__new__(cls)
        if b == 0:
            d = 0
        object.__setattr__(obj, "_a", a)
        object.__setattr__(obj, "_b", b)
        object.__setattr__(obj, "_d", d)
        return obj

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def d(self) -> int:
        return self._d

    @property
    def is_rational(self) -> bool:
        return self._b == 0

    def conjugate(self) -> "QuadExt":
        return QuadExt._raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        return self._a * self._a - self._b * self._b * self._d

    def _field(self, other: "QuadExt") -> int:
        if self._d == other._d or other._d == 0:
            return self._d
        if self._d == 0:
            return other._d
        raise RadicandMismatchError(
            f"cannot combine elements of Q(sqrt {self._d}) and Q(sqrt {other._d})"
        )

    @staticmethod
    def _coerce(x) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadExt._raw(Fraction(x), Fraction(0), 0)
        return NotImplemented

    def __add__(self, other):
        other = QuadExt._coerce(other)
        if other is NotImplemented:
            return other
        d = self._field(other)
        return QuadExt._raw(self._a + other._a, self._b + other._b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt._raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = QuadExt._coerce(other)
        if other is NotImplemented:
            return other
        d = self._field(other)
        return QuadExt._raw(self._a - other._a, self._b - other._b, d)

    def __rsub__(self, other):
        other = QuadExt._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = QuadExt._coerce(other)
        if other is NotImplemented:
            return other
        d = self._field(other)
        a1, b1, a2, b2 = self._a, self._b, other._a, other._b
        return QuadExt._raw(a1 * a2 + b1 * b2 * d, a1 * b2 + a2 * b1, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        if self._a == 0 and self._b == 0:
            raise ZeroDivisionError("inverse of zero")
        n = self.norm()
        # n == 0 would need sqrt(d) rational, impossible for squarefree d > 1
        assert n != 0, "zero norm for nonzero element"
        return QuadExt._raw(self._a / n, -self._b / n, self._d)

    def __truediv__(self, other):
        other = QuadExt._coerce(other)
        if other is NotImplemented:
            return other
        self._field(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = QuadExt._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return quad_pow(self, n)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and self._a == other
        if not isinstance(other, QuadExt):
            return NotImplemented
        return self._a == other._a and self._b == other._b and self._d == other._d

    def __hash__(self):
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return bool(self._a) or bool(self._b)

    def __float__(self):
        return quad_to_float(self)

    def __repr__(self):
        return f"QuadExt({format_quad(self)!r})"

    def __str__(self):
        return format_quad(self)


def normalize_radicand(a: RationalLike, b: RationalLike, D: int) -> QuadExt:
    """Build ``a + b*sqrt(D)`` for arbitrary ``D >= 1``, pulling out square factors.

    >>> normalize_radicand(0, 1, 45)
    QuadExt('3*sqrt(5)')
    """
    if D < 1:
        raise ValueError("D must be >= 1")
    s, d = squarefree_split(D)
    a = as_fraction(a)
    b = as_fraction(b) * s
    if d == 1:
        return QuadExt._raw(a + b, Fraction(0), 0)
    return QuadExt._raw(a, b, d)


def quad_mul(x: QuadExt, y: QuadExt) -> QuadExt:
    return x * y


def quad_inv(x: QuadExt) -> QuadExt:
    return x.inverse()


def quad_pow(x: QuadExt, n: int) -> QuadExt:
    """``x**n`` by repeated squaring; negative ``n`` inverts first."""
    if n < 0:
        if not x:
            raise ZeroDivisionError("zero base with negative exponent")
        x = x.inverse()
        n = -n
    result = QuadExt._raw(Fraction(1), Fraction(0), 0)
    base = x
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def quad_to_float(x: QuadExt) -> float:
    """Double-precision value of ``x``.

    When ``a`` and ``b*sqrt(d)`` have opposite signs the value is formed as
    ``norm / conjugate``, which has no cancellation.
    """
    a, b, d = x.a, x.b, x.d
    try:
        if b == 0:
            return float(a)
        root = math.sqrt(d)
        if a == 0 or (a > 0) == (b > 0):
            return float(a) + float(b) * root
        n = x.norm()
        return float(n) / (float(a) - float(b) * root)
    except OverflowError as exc:
        raise OverflowError(f"{x} is outside the double range") from exc


_RAT = r"[+-]?\d+(?:/\d+)?"
_UNS = r"\d+(?:/\d+)?"
_SQRT = rf"(?P<b>{_UNS})\s*\*\s*sqrt\(\s*(?P<d>\d+)\s*\)"
_QUAD_FORMS = (
    re.compile(rf"\s*(?P<a>{_RAT})\s*(?P<sign>[+-])\s*{_SQRT}\s*"),
    re.compile(rf"\s*(?P<sign>[+-]?)\s*{_SQRT}\s*"),
    re.compile(rf"\s*(?P<a>{_RAT})\s*"),
)


def format_fraction(x: Fraction) -> str:
    return str(x)


def parse_fraction(s: str) -> Fraction:
    s = s.strip()
    if not re.fullmatch(_RAT, s):
        raise ValueError(f"not an exact rational: {s!r}")
    return Fraction(s)


def format_quad(x: QuadExt) -> str:
    """Serialize as ``a+b*sqrt(d)``; the rational part is dropped when zero."""
    if x.b == 0:
        return str(x.a)
    sign = "-" if x.b < 0 else "+"
    tail = f"{abs(x.b)}*sqrt({x.d})"
    if x.a == 0:
        return tail if sign == "+" else "-" + tail
    return f"{x.a}{sign}{tail}"


def parse_quad(s: str) -> QuadExt:
    for form in _QUAD_FORMS:
        m = form.fullmatch(s)
        if m:
            break
    else:
        raise ValueError(f"not a quadratic-field literal: {s!r}")
    groups = m.groupdict()
    a = Fraction(groups["a"]) if groups.get("a") else Fraction(0)
    if groups.get("b") is None:
        return QuadExt(a)
    b = Fraction(groups["b"])
    if groups["sign"] == "-":
        b = -b
    return normalize_radicand(a, b, int(groups["d"]))


SQRT5 = QuadExt(0, 1, 5)
PHI = QuadExt(Fraction(1, 2), Fraction(1, 2), 5)
