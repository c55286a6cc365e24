"""Integer sequences and exact golden-ratio constants.

Fibonacci, Lucas, Pell and half Pell-Lucas numbers; Bejaia and Pisa numbers
(the Lucas sequences with characteristic polynomial ``x^2 - (N-2)x + 1``);
powers of the golden ratio and the constants built from them.
"""

from __future__ import annotations

import enum
from fractions import Fraction

from .exactnum import PHI, SQRT5, QuadExt, normalize_radicand, quad_pow

__all__ = [
    "SeqKind",
    "seq_term",
    "fib",
    "lucas",
    "pell",
    "pell_lucas_half",
    "golden_power",
    "c_constant",
    "d_constant",
    "sqrt_bejaia_disc",
    "bejaia",
    "pisa",
    "bejaia_closed",
    "pisa_closed",
    "HypMode",
    "fib_hyp",
    "prop2_ratio",
    "phi_ratio",
]


class SeqKind(enum.Enum):
    FIB = "fib"
    LUCAS = "lucas"
    PELL = "pell"
    PELL_LUCAS_HALF = "pell-lucas-half"


# (x0, x1, a): x_n = a*x_{n-1} + x_{n-2}
_SEEDS = {
    SeqKind.FIB: (0, 1, 1),
    SeqKind.LUCAS: (2, 1, 1),
    SeqKind.PELL: (0, 1, 2),
    SeqKind.PELL_LUCAS_HALF: (1, 1, 2),
}
_TERMS: dict[SeqKind, list[int]] = {k: [s[0], s[1]] for k, s in _SEEDS.items()}


def seq_term(kind: SeqKind, n: int) -> int:
    if n < 0:
        raise ValueError(f"negative index {n}")
    kind = SeqKind(kind)
    terms = _TERMS[kind]
    a = _SEEDS[kind][2]
    while len(terms) <= n:
        terms.append(a * terms[-1] + terms[-2])
    return terms[n]


def fib(n: int) -> int:
    return seq_term(SeqKind.FIB, n)


def lucas(n: int) -> int:
    return seq_term(SeqKind.LUCAS, n)


def pell(n: int) -> int:
    return seq_term(SeqKind.PELL, n)


def pell_lucas_half(n: int) -> int:
    return seq_term(SeqKind.PELL_LUCAS_HALF, n)


def golden_power(n: int) -> QuadExt:
    """``phi**n`` exactly in Q(sqrt 5)."""
    return quad_pow(PHI, n)


def c_constant(N: int) -> QuadExt:
    """``(1 + q**N) / (1 - q**N)`` with ``q = (3 - sqrt 5)/2 = phi**-2``."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    qN = golden_power(-2 * N)
    return (1 + qN) / (1 - qN)


def sqrt_bejaia_disc(N: int) -> QuadExt:
    """``sqrt(N(N-4))`` in canonical squarefree form."""
    if N < 5:
        raise ValueError("N must be >= 5")
    return normalize_radicand(0, 1, N * (N - 4))


def _bejaia_roots(N: int) -> tuple[QuadExt, QuadExt]:
    half = Fraction(N - 2, 2)
    r = sqrt_bejaia_disc(N) * Fraction(1, 2)
    return half + r, half - r


def d_constant(N: int) -> QuadExt:
    """``(1 - r**N) / (1 + r**N)`` with ``r = (N - 2 - sqrt(N(N-4)))/2``."""
    _, r = _bejaia_roots(N)
    rN = quad_pow(r, N)
    return (1 - rN) / (1 + rN)


def _lucas_pair(N: int, ell: int, x0: int, x1: int) -> int:
    if N < 5:
        raise ValueError("N must be >= 5")
    if ell < 0:
        raise ValueError("index must be nonnegative")
    if ell == 0:
        return x0
    prev, cur = x0, x1
    p = N - 2
    for _ in range(ell - 1):
        prev, cur = cur, p * cur - prev
    return cur


def bejaia(N: int, ell: int) -> int:
    """Bejaia number ``B_ell(N)``: ``x_l = (N-2) x_{l-1} - x_{l-2}``, ``x_0=0, x_1=1``."""
    return _lucas_pair(N, ell, 0, 1)


def pisa(N: int, ell: int) -> int:
    """Pisa number ``P_ell(N)``: same recurrence with ``x_0=2, x_1=N-2``."""
    return _lucas_pair(N, ell, 2, N - 2)


def bejaia_closed(N: int, ell: int) -> QuadExt:
    """Surd form ``(r+**l - r-**l) / sqrt(N(N-4))``; a test oracle for :func:`bejaia`."""
    rp, rm = _bejaia_roots(N)
    return (quad_pow(rp, ell) - quad_pow(rm, ell)) / sqrt_bejaia_disc(N)


def pisa_closed(N: int, ell: int) -> QuadExt:
    rp, rm = _bejaia_roots(N)
    return quad_pow(rp, ell) + quad_pow(rm, ell)


class HypMode(enum.Enum):
    SINH = "sinh"
    COSH = "cosh"


def fib_hyp(e: int, mode: HypMode) -> QuadExt:
    """Fibonacci hyperbolic functions at integer exponent ``e`` of phi.

    SINH gives ``(phi**e - phi**-e)/sqrt5`` (sFh at ``e/2``); COSH gives
    ``(phi**e + phi**-e)/sqrt5`` (cFh at ``(e-1)/2``).
    """
    mode = HypMode(mode)
    up = golden_power(e)
    down = golden_power(-e)
    top = up - down if mode is HypMode.SINH else up + down
    return top / SQRT5


def prop2_ratio(m: int, ell: int) -> QuadExt:
    """``(phi**(3m-3l) + phi**(3l)) / (phi**(3m) - 1)`` for ``1 <= l < m/2``.

    Equals cFh((3m-6l-2)/4) / sFh(3m/4).
    """
    if m < 3 or ell < 1 or 2 * ell >= m:
        raise ValueError(f"need m >= 3 and 1 <= ell < m/2, got m={m}, ell={ell}")
    return phi_ratio(3 * m, 3 * ell)


def phi_ratio(M: int, L: int) -> QuadExt:
    return (golden_power(M - L) + golden_power(L)) / (golden_power(M) - 1)
