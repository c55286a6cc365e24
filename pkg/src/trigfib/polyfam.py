"""Dense exact polynomials and the Chebyshev / Fibonacci / Lucas / Pell families.

A :class:`DensePoly` is stored as integer numerators over one positive common
denominator, so every family polynomial (all integral) is multiplied with
plain integer arithmetic.  Large products go through Kronecker substitution:
both operands are packed into a single big integer, multiplied once, and
unpacked with signed digit recovery.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .exactnum import QuadExt, as_fraction

__all__ = [
    "DensePoly",
    "ParityError",
    "X",
    "ONE",
    "ZERO",
    "U_MINUS_ONE",
    "cheb_t",
    "cheb_u",
    "fib_poly",
    "lucas_poly",
    "pell_poly",
    "pell_lucas_poly",
    "derivative",
    "compose",
    "compose_scale",
    "i_twist",
    "eval_rational",
    "eval_quad",
    "eval_float",
    "even_part_factor",
    "FAMILIES",
]


class ParityError(ValueError):
    """A polynomial mixes even and odd powers where a single parity is required."""


_KRONECKER_MIN = 24


def _balanced_unpack(value: int, count: int, bits: int) -> list[int]:
    # value == sum(c_i << (bits*i)) with |c_i| < 2**(bits-1)
    if count == 1:
        return [value]
    half = count // 2
    shift = bits * half
    mask = (1 << shift) - 1
    low = value & mask
    if low >> (shift - 1):
        low -= 1 << shift
    high = (value - low) >> shift
    return _balanced_unpack(low, half, bits) + _balanced_unpack(high, count - half, bits)


def _pack(coeffs: Sequence[int], bits: int) -> int:
    n = len(coeffs)
    if n <= 8:
        acc = 0
        for c in reversed(coeffs):
            acc = (acc << bits) + c
        return acc
    half = n // 2
    return _pack(coeffs[:half], bits) + (_pack(coeffs[half:], bits) << (bits * half))


def _mul_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    if len(b) <= _KRONECKER_MIN:
        out = [0] * (len(a) + len(b) - 1)
        for j, bj in enumerate(b):
            if bj:
                for i, ai in enumerate(a):
                    out[i + j] += ai * bj
        return out
    bound = max(map(abs, a)) * max(map(abs, b)) * len(b)
    bits = bound.bit_length() + 2
    count = len(a) + len(b) - 1
    return _balanced_unpack(_pack(a, bits) * _pack(b, bits), count, bits)


class DensePoly:
    """Immutable univariate polynomial with rational coefficients.

    ``coeffs`` is ascending by degree; the zero polynomial has no coefficients.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, coeffs: Iterable = ()):
        fracs = [as_fraction(c) for c in coeffs]
        den = 1
        for c in fracs:
            den = den * c.denominator // gcd(den, c.denominator)
        num = [c.numerator * (den // c.denominator) for c in fracs]
        self._set(*_canonical(num, den))

    def _set(self, num: tuple, den: int) -> None:
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)

    def __setattr__(self, name, value):
        raise AttributeError("DensePoly is immutable")

    @classmethod
    def _from_int(cls, num: Sequence[int], den: int = 1) -> "DensePoly":
        obj = object.__new__(cls)
        obj._set(*_canonical(num, den))
        return obj

    @classmethod
    def monomial(cls, k: int, c=1) -> "DensePoly":
        c = as_fraction(c)
        return cls._from_int([0] * k + [c.numerator], c.denominator)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        den = self._den
        return tuple(Fraction(c, den) for c in self._num)

    @property
    def int_coeffs(self) -> tuple[int, ...]:
        if self._den != 1:
            raise ValueError("polynomial has non-integer coefficients")
        return self._num

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self._num) - 1

    def __len__(self):
        return len(self._num)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self._num):
            return Fraction(self._num[k], self._den)
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._num

    def __bool__(self):
        return bool(self._num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DensePoly([other])
        if not isinstance(other, DensePoly):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        return hash((self._num, self._den))

    def __repr__(self):
        return f"DensePoly({format_coeffs(self)})"

    def __str__(self):
        return format_coeffs(self)

    @staticmethod
    def _coerce(x) -> "DensePoly":
        if isinstance(x, DensePoly):
            return x
        if isinstance(x, (int, Fraction)):
            x = Fraction(x)
            return DensePoly._from_int([x.numerator], x.denominator)
        return NotImplemented

    def _aligned(self, other: "DensePoly"):
        den = self._den * other._den // gcd(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        a = [c * fa for c in self._num] if fa != 1 else list(self._num)
        b = [c * fb for c in other._num] if fb != 1 else list(other._num)
        return a, b, den

    def __add__(self, other):
        other = DensePoly._coerce(other)
        if other is NotImplemented:
            return other
        a, b, den = self._aligned(other)
        if len(a) < len(b):
            a, b = b, a
        out = a[:]
        for i, c in enumerate(b):
            out[i] += c
        return DensePoly._from_int(out, den)

    __radd__ = __add__

    def __neg__(self):
        return DensePoly._from_int([-c for c in self._num], self._den)

    def __sub__(self, other):
        other = DensePoly._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = DensePoly._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return DensePoly._from_int(
                [x * c.numerator for x in self._num], self._den * c.denominator
            )
        if not isinstance(other, DensePoly):
            return NotImplemented
        return DensePoly._from_int(_mul_int(self._num, other._num), self._den * other._den)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "DensePoly":
        """Multiply by ``x**k``."""
        if not self._num:
            return self
        return DensePoly._from_int([0] * k + list(self._num), self._den)

    def parity(self) -> int | None:
        """0 or 1 if every nonzero term has that degree parity, else ``None``."""
        seen = {k & 1 for k, c in enumerate(self._num) if c}
        if len(seen) == 1:
            return seen.pop()
        if not seen:
            return 0
        return None

    def __call__(self, x):
        if isinstance(x, QuadExt):
            return eval_quad(self, x)
        if isinstance(x, float):
            return eval_float(self, x)
        return eval_rational(self, as_fraction(x))


def _canonical(num: Sequence[int], den: int) -> tuple[tuple[int, ...], int]:
    if den <= 0:
        raise ValueError("denominator must be positive")
    end = len(num)
    while end and num[end - 1] == 0:
        end -= 1
    num = tuple(num[:end])
    if den != 1:
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if not num:
            g = den
        if g != 1:
            num = tuple(c // g for c in num)
            den //= g
    return num, den


def format_coeffs(p: DensePoly) -> str:
    return "[" + ", ".join(str(c) for c in p.coeffs) + "]"


ZERO = DensePoly()
ONE = DensePoly([1])
X = DensePoly([0, 1])
# U_{-1} := 0, used by the resolvent closed forms; cheb_u(-1) is rejected on purpose
U_MINUS_ONE = ZERO


def _family(seed0: Sequence[int], seed1: Sequence[int], xcoef: int, name: str):
    # p_{k+1} = xcoef*x*p_k + sign*p_{k-1}; integer lists only
    cache: list[tuple[int, ...]] = [tuple(seed0), tuple(seed1)]
    sign = -1 if name in ("T", "U") else 1

    def build(n: int) -> DensePoly:
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"{name}_n needs a nonnegative integer index, got {n!r}")
        while len(cache) <= n:
            prev, cur = cache[-2], cache[-1]
            nxt = [0] * (len(cur) + 1)
            for i, c in enumerate(cur):
                nxt[i + 1] = xcoef * c
            for i, c in enumerate(prev):
                nxt[i] += sign * c
            cache.append(tuple(nxt))
        return DensePoly._from_int(cache[n])

    build.__name__ = name
    return build


_cheb_t = _family([1], [0, 1], 2, "T")
_cheb_u = _family([1], [0, 2], 2, "U")
_fib = _family([], [1], 1, "F")
_lucas = _family([2], [0, 1], 1, "L")


def cheb_t(n: int) -> DensePoly:
    """Chebyshev polynomial of the first kind, ``T_n(cos t) = cos(n t)``."""
    return _cheb_t(n)


def cheb_u(n: int) -> DensePoly:
    """Chebyshev polynomial of the second kind; ``n >= 0`` (see ``U_MINUS_ONE``)."""
    return _cheb_u(n)


def fib_poly(n: int) -> DensePoly:
    return _fib(n)


def lucas_poly(n: int) -> DensePoly:
    return _lucas(n)


@lru_cache(maxsize=None)
def pell_poly(n: int) -> DensePoly:
    """Pell polynomial ``P_n(x) = F_n(2x)``."""
    return compose_scale(fib_poly(n), 2)


@lru_cache(maxsize=None)
def pell_lucas_poly(n: int) -> DensePoly:
    """Pell-Lucas polynomial ``Q_n(x) = L_n(2x)``."""
    return compose_scale(lucas_poly(n), 2)


FAMILIES = {
    "cheb-t": cheb_t,
    "cheb-u": cheb_u,
    "fib": fib_poly,
    "lucas": lucas_poly,
    "pell": pell_poly,
    "pell-lucas": pell_lucas_poly,
}


def derivative(p: DensePoly) -> DensePoly:
    return DensePoly._from_int([k * c for k, c in enumerate(p._num)][1:], p._den)


def compose(p: DensePoly, q: DensePoly) -> DensePoly:
    """``p(q(x))`` by Horner's scheme."""
    if p.is_zero():
        return ZERO
    qn, qd = q._num, q._den
    num = p._num
    # accumulate r = sum p_k q^k with denominators (p._den * qd**deg) cleared
    deg = len(num) - 1
    acc: list[int] = [num[deg]]
    scale = 1
    for k in range(deg - 1, -1, -1):
        acc = _mul_int(acc, qn) if acc else []
        scale *= qd
        if len(acc) == 0:
            acc = [num[k] * scale]
        else:
            acc[0] += num[k] * scale
    return DensePoly._from_int(acc, p._den * scale)


def compose_scale(p: DensePoly, c) -> DensePoly:
    """``p(c*x)``: coefficient ``k`` is multiplied by ``c**k``."""
    c = as_fraction(c)
    cn, cd = c.numerator, c.denominator
    deg = p.degree
    if deg < 0:
        return p
    # clear denominators with cd**deg
    out = []
    pw_n, pw_d = 1, cd**deg
    for k, a in enumerate(p._num):
        out.append(a * pw_n * pw_d)
        pw_n *= cn
        if k < deg:
            pw_d //= cd
    return DensePoly._from_int(out, p._den * cd**deg)


def i_twist(p: DensePoly, n: int) -> DensePoly:
    """Real form of ``(-i)**n * p(i*x)`` for a polynomial of parity ``n``.

    Coefficient ``k`` becomes ``(-1)**((n-k)/2) * p_k``.
    """
    out = []
    for k, c in enumerate(p._num):
        if c and (n - k) % 2:
            raise ParityError(f"term of degree {k} has the wrong parity for n={n}")
        out.append(-c if ((n - k) // 2) % 2 else c)
    return DensePoly._from_int(out, p._den)


def eval_rational(p: DensePoly, x) -> Fraction:
    x = as_fraction(x)
    xn, xd = x.numerator, x.denominator
    num = p._num
    if not num:
        return Fraction(0)
    # homogeneous Horner: sum c_k xn^k xd^(deg-k)
    acc = 0
    pw = 1
    for c in reversed(num):
        acc = acc * xn + c * pw
        pw *= xd
    deg = len(num) - 1
    return Fraction(acc, p._den * xd**deg)


def eval_quad(p: DensePoly, x: QuadExt) -> QuadExt:
    acc = QuadExt(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def eval_float(p: DensePoly, x) -> float:
    acc = 0.0 if not isinstance(x, complex) else 0j
    den = p._den
    for c in reversed(p._num):
        acc = acc * x + (c / den)
    return acc


def even_part_factor(p: DensePoly) -> tuple[int, DensePoly]:
    """Split ``p = x**k * g(x**2)``; returns ``(k, g)``."""
    if p.is_zero():
        raise ValueError("zero polynomial has no such factorization")
    num = p._num
    k = next(i for i, c in enumerate(num) if c)
    rest = num[k:]
    if any(c for c in rest[1::2]):
        raise ParityError("polynomial mixes parities after removing the root at 0")
    return k, DensePoly._from_int(rest[::2], p._den)
