"""Finite trigonometric sums and their Chebyshev closed forms.

Spectral sides are double-precision sums with Neumaier compensation, run by
the active float backend (compiled when available).  Closed sides are either
exact rationals (through :mod:`trigfib.polyfam`) or overflow-safe float
evaluations of the same Chebyshev expressions.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from . import _backend
from .exactnum import as_fraction
from .polyfam import cheb_t, cheb_u, eval_rational

__all__ = [
    "POLE_TOLERANCE",
    "LOG_PHI",
    "PoleError",
    "ResolventParams",
    "SumVariant",
    "resolvent_spectral",
    "resolvent_closed",
    "resolvent_closed_exact",
    "wu_spectral",
    "wu_closed",
    "wu_spectral_profile",
    "trig_sum",
    "r1_closed_cheb",
    "bn1_closed_cheb",
    "cheb_u_exact",
    "cheb_t_exact",
]

POLE_TOLERANCE = 1e-9
LOG_PHI = math.log((1.0 + math.sqrt(5.0)) / 2.0)


class PoleError(ValueError):
    """The spectral parameter sits on (or within tolerance of) the spectrum."""


@dataclass(frozen=True)
class ResolventParams:
    m: int
    beta: Fraction
    ell: int
    s: complex

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be a positive integer")
        beta = as_fraction(self.beta)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "s", complex(self.s))
        if not 0 <= beta < 1:
            raise ValueError("beta must lie in [0, 1)")
        if not 0 <= self.ell <= self.m - 1:
            raise ValueError("ell must lie in [0, m-1]")


class SumVariant(enum.Enum):
    SUMEQ2 = "sumeq2"
    SUMEQ3 = "sumeq3"
    SUMEQ4 = "sumeq4"
    SEIFFERT = "seiffert"
    SUM3 = "sum3"
    SUM4 = "sum4"
    SUM5 = "sum5"
    R1SUM = "r1sum"
    BN1SUM = "bn1sum"
    PROP2SUM = "prop2sum"


def _nearest_pole_distance(m: int, beta: float, s: complex) -> float:
    # poles are -2 sin^2(pi (j+beta)/m), all inside [-2, 0]
    if abs(s.imag) > POLE_TOLERANCE or not -2.0 - POLE_TOLERANCE <= s.real <= POLE_TOLERANCE:
        return math.inf
    best = math.inf
    for j in range(m):
        p = -2.0 * math.sin(math.pi * (j + beta) / m) ** 2
        best = min(best, abs(s - p))
    return best


def _check_pole(p: ResolventParams) -> None:
    dist = _nearest_pole_distance(p.m, float(p.beta), p.s)
    if dist <= POLE_TOLERANCE:
        raise PoleError(
            f"s={p.s} is within {POLE_TOLERANCE:g} of the spectrum "
            f"(m={p.m}, beta={p.beta}); distance {dist:.3g}"
        )


def resolvent_spectral(p: ResolventParams) -> complex:
    """``(1/m) sum_j e^{2 pi i j l/m} / (s + 2 sin^2(pi (j+beta)/m))``."""
    _check_pole(p)
    re, im = _backend.active().resolvent_sum(p.m, float(p.beta), p.ell, p.s.real, p.s.imag)
    return complex(re, im)


def _cheb_w(z: complex) -> complex:
    # root of w + 1/w = 2z with |w| >= 1
    r = cmath.sqrt(z - 1) * cmath.sqrt(z + 1)
    w = z + r
    if abs(w) < 1.0:
        w = z - r
    return w


def _cheb_direct(m: int, z: complex, wanted: tuple[int, ...]):
    """T_m(z) and U_k(z) for k in ``wanted`` by the three-term recurrence."""
    u_vals = {}
    u_prev, u_cur = 0j, 1 + 0j  # U_{-1}, U_0
    t_prev, t_cur = 1 + 0j, z  # T_0, T_1
    want = set(wanted)
    if -1 in want:
        u_vals[-1] = 0j
    if 0 in want:
        u_vals[0] = u_cur
    for k in range(1, max(m, max(wanted, default=0)) + 1):
        u_prev, u_cur = u_cur, 2 * z * u_cur - u_prev
        if k in want:
            u_vals[k] = u_cur
        if k < m:
            t_prev, t_cur = t_cur, 2 * z * t_cur - t_prev
    t_m = 1 + 0j if m == 0 else t_cur
    return t_m, u_vals


def resolvent_closed(p: ResolventParams) -> complex:
    """``e^{-2 pi i beta l/m} (U_{m-l-1}(s+1) + e^{2 pi i beta} U_{l-1}(s+1)) / (T_m(s+1) - cos 2 pi beta)``.

    The outer phase carries a minus sign; with ``+`` the identity with the
    spectral sum only holds when ``beta*l/m`` is a multiple of 1/2.
    Large ``|T_m|`` is handled by dividing through by ``w**m`` where
    ``w + 1/w = 2(s+1)``, so no intermediate overflows.
    """
    _check_pole(p)
    m, ell = p.m, p.ell
    beta = float(p.beta)
    z = p.s + 1
    cos_b = math.cos(2 * math.pi * beta)
    twist = cmath.exp(2j * math.pi * beta)
    phase = cmath.exp(-2j * math.pi * beta * ell / m)
    w = _cheb_w(z)
    growth = m * math.log(abs(w))
    if growth <= 300.0 or abs(w - 1 / w) < 1e-6:
        t_m, u = _cheb_direct(m, z, (m - ell - 1, ell - 1))
        num = u[m - ell - 1] + twist * u[ell - 1]
        den = t_m - cos_b
    else:
        inv = 1 / w
        scale = inv / (1 - inv * inv)

        def u_scaled(k: int) -> complex:
            if k < 0:
                return 0j
            return (inv ** (m - k - 1) - inv ** (m + k + 1)) * scale

        num = u_scaled(m - ell - 1) + twist * u_scaled(ell - 1)
        den = (1 + inv ** (2 * m)) / 2 - cos_b * inv**m
    return phase * num / den


def cheb_t_exact(n: int, x) -> Fraction:
    return eval_rational(cheb_t(n), x)


def cheb_u_exact(n: int, x) -> Fraction:
    """``U_n(x)`` with the convention ``U_{-1} = 0``."""
    if n == -1:
        return Fraction(0)
    return eval_rational(cheb_u(n), x)


def resolvent_closed_exact(m: int, beta, ell: int, s) -> Fraction:
    """Exact closed form when it is rational: ``beta = 0`` (any ell) or ``beta = 1/2, ell = 0``."""
    beta = as_fraction(beta)
    s = as_fraction(s)
    if not 0 <= ell <= m - 1:
        raise ValueError("ell must lie in [0, m-1]")
    z = s + 1
    if beta == 0:
        num = cheb_u_exact(m - ell - 1, z) + cheb_u_exact(ell - 1, z)
        den = cheb_t_exact(m, z) - 1
    elif beta == Fraction(1, 2) and ell == 0:
        num = cheb_u_exact(m - 1, z)
        den = cheb_t_exact(m, z) + 1
    else:
        raise ValueError("exact closed form only for beta = 0, or beta = 1/2 with ell = 0")
    if den == 0:
        raise PoleError(f"T_{m}({z}) hits the character value; s={s} is a pole")
    return num / den


def _check_wu(m: int, ell: int, lam: float) -> None:
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if m < 1 or not 0 <= ell <= m - 1:
        raise ValueError("need m >= 1 and 0 <= ell <= m-1")


def wu_spectral(m: int, ell: int, lam: float) -> float:
    """``(1/m) sum_j cos(2 l j pi/m) / (cosh lam - cos(2 j pi/m))``."""
    _check_wu(m, ell, lam)
    return _backend.active().wu_sum(m, ell, float(lam))


def wu_spectral_profile(m: int, lam: float) -> list[float]:
    """:func:`wu_spectral` for every ell in ``0..m-1``."""
    _check_wu(m, 0, lam)
    return _backend.active().wu_profile(m, float(lam))


def wu_closed(m: int, ell: int, lam: float) -> float:
    """``cosh((m/2 - l) lam) / (sinh lam * sinh(m lam/2))`` without overflow."""
    _check_wu(m, ell, lam)
    a = abs(m / 2 - ell) * lam
    b = m * lam / 2
    # cosh a / sinh b = e^(a-b) (1 + e^-2a) / (1 - e^-2b)
    ratio = math.exp(a - b) * (1 + math.exp(-2 * a)) / -math.expm1(-2 * b)
    return ratio / math.sinh(lam)


def _need(params: dict, *names):
    missing = [n for n in names if params.get(n) is None]
    if missing:
        raise ValueError(f"missing parameter(s): {', '.join(missing)}")
    return [params[n] for n in names]


def _positive_x(x) -> float:
    x = float(x)
    if not x > 0:
        raise ValueError("x must be positive")
    return x


def trig_sum(variant: SumVariant, **params) -> float:
    """Float left-hand side of one of the named trigonometric sums.

    Parameters by variant: ``m, x`` for SUMEQ2/3/4 and SEIFFERT; ``m`` for
    SUM3/4/5; ``N, ell`` for R1SUM and BN1SUM; ``m, ell`` for PROP2SUM.
    """
    variant = SumVariant(variant)
    k = _backend.active()
    if variant in (SumVariant.SUMEQ2, SumVariant.SUMEQ3, SumVariant.SUMEQ4, SumVariant.SEIFFERT):
        m, x = _need(params, "m", "x")
        _check_m(m)
        x2 = _positive_x(x) ** 2
        if variant is SumVariant.SUMEQ3:
            return k.recip_sin2_sum(2 * m, 0, 2 * m - 1, x2, 4.0)
        if variant is SumVariant.SEIFFERT:
            return k.recip_sin2_sum(2 * m, 1, m - 1, x2, 1.0)
        return k.recip_sin2_sum(2 * m, 0, 2 * m - 1, x2, 1.0)
    if variant is SumVariant.SUM3:
        (m,) = _need(params, "m")
        _check_m(m)
        return k.recip_sin2_sum(2 * m, 1, 2 * m - 1, 0.25, 1.0)
    if variant is SumVariant.SUM4:
        (m,) = _need(params, "m")
        _check_m(m)
        return k.recip_sin2_sum(2 * m, 0, 2 * m - 1, 1.0, 4.0)
    if variant is SumVariant.SUM5:
        (m,) = _need(params, "m")
        _check_m(m)
        return k.recip_sin2_sum(2 * m, 0, 2 * m - 1, 1.0, 1.0)
    if variant is SumVariant.R1SUM:
        N, ell = _need(params, "N", "ell")
        if N < 2 or not 0 <= ell <= N - 1:
            raise ValueError("R1SUM needs N >= 2 and 0 <= ell <= N-1")
        return k.r1_sum(N, ell)
    if variant is SumVariant.BN1SUM:
        N, ell = _need(params, "N", "ell")
        _check_bn1(N, ell)
        return k.bn1_sum(N, ell)
    m, ell = _need(params, "m", "ell")
    return wu_spectral(m, ell, 3 * LOG_PHI)


def _check_m(m: int) -> None:
    if m < 1:
        raise ValueError("m must be a positive integer")


def _check_bn1(N: int, ell: int) -> None:
    if N % 2 == 0 or N < 5:
        raise ValueError(f"N must be odd and >= 5, got {N}")
    if not 0 <= ell or 2 * ell >= N + 1:
        raise ValueError(f"ell must satisfy 0 <= ell < (N+1)/2, got {ell}")


def r1_closed_cheb(N: int, ell: int) -> Fraction:
    """Chebyshev value of the R1 sum at ``s = -5/2``.

    ``(U_{N-l-1}(-3/2) + U_{l-1}(-3/2) - U_{N-1}(-3/2)) / (T_N(-3/2) - 1)``
    """
    if N < 2 or not 0 <= ell <= N - 1:
        raise ValueError("need N >= 2 and 0 <= ell <= N-1")
    z = Fraction(-3, 2)
    num = cheb_u_exact(N - ell - 1, z) + cheb_u_exact(ell - 1, z) - cheb_u_exact(N - 1, z)
    return num / (cheb_t_exact(N, z) - 1)


def bn1_closed_cheb(N: int, ell: int) -> Fraction:
    """``(U_{N-2l-1}(z) + U_{2l-1}(z) - U_{N-1}(z)) / (2 T_N(z) - 2)`` at ``z = 1 - N/2``."""
    _check_bn1(N, ell)
    z = 1 - Fraction(N, 2)
    num = (
        cheb_u_exact(N - 2 * ell - 1, z)
        + cheb_u_exact(2 * ell - 1, z)
        - cheb_u_exact(N - 1, z)
    )
    den = 2 * cheb_t_exact(N, z) - 2
    if den == 0:
        raise ZeroDivisionError(f"degenerate denominator at N={N}")
    return num / den
