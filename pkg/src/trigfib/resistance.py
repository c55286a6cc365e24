"""Two-point resistance on circulant resistor networks.

A circulant network ``C_N(j1, j2, ...)`` joins vertex ``i`` to ``i +- jk mod N``.
Routes:

* exact: fraction-free (Bareiss) elimination on the grounded Laplacian;
* float: dense numpy solve of the same system;
* closed: the Fibonacci formula for ``C_N(1,2)``, exact in Q(sqrt 5) or
  in a cancellation-free float form;
* spectral: the trigonometric sum for ``C_N(1,2)``.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _backend
from .exactnum import SQRT5, QuadExt, as_fraction
from .sequences import c_constant, fib

__all__ = [
    "Route",
    "CirculantSpec",
    "ResistanceResult",
    "ClosedFormError",
    "IllConditionedError",
    "DisconnectedError",
    "laplacian",
    "two_point_resistance_exact",
    "resistance_profile_exact",
    "two_point_resistance_float",
    "resistance_profile_float",
    "resistance_cn12_closed",
    "resistance_cn12_closed_float",
    "resistance_cn12_closed_profile",
    "resistance_cn12_spectral",
    "resistance_cn12_spectral_profile",
    "effective_resistance",
    "BenchRow",
    "bench_resistance",
]

FLOAT_MAX_N = 4096
RESIDUAL_THRESHOLD = 1e-8


class Route(enum.Enum):
    SOLVE_EXACT = "exact"
    SOLVE_FLOAT = "float"
    CLOSED_FORM = "closed"
    SPECTRAL = "spectral"


class ClosedFormError(ArithmeticError):
    """The closed form left an irrational part behind."""


class IllConditionedError(ArithmeticError):
    pass


class DisconnectedError(ValueError):
    """The jumps do not generate Z_N, so some vertex pairs have no path."""


@dataclass(frozen=True)
class CirculantSpec:
    N: int
    jumps: tuple[int, ...] = (1,)
    conductance: Fraction = Fraction(1)

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be a positive integer")
        jumps = tuple(int(j) for j in self.jumps)
        if not jumps:
            raise ValueError("jumps must be nonempty")
        if any(j <= 0 for j in jumps):
            raise ValueError("jumps must be positive integers")
        object.__setattr__(self, "jumps", jumps)
        c = as_fraction(self.conductance)
        if c <= 0:
            raise ValueError("conductance must be positive")
        object.__setattr__(self, "conductance", c)

    @classmethod
    def cn12(cls, N: int) -> "CirculantSpec":
        return cls(N, (1, 2))

    def unit_adjacency(self) -> list[list[int]]:
        """Edge multiplicities with unit conductance; self-loops dropped."""
        N = self.N
        adj = [[0] * N for _ in range(N)]
        for j in self.jumps:
            if j % N == 0:
                continue
            for i in range(N):
                adj[i][(i + j) % N] += 1
                adj[i][(i - j) % N] += 1
        return adj


@dataclass(frozen=True)
class ResistanceResult:
    value_float: float
    route: Route
    value_exact: Optional[Fraction] = None

    def __post_init__(self):
        if self.value_exact is not None:
            ref = float(self.value_exact)
            if abs(ref - self.value_float) > 1e-9 * max(1.0, abs(ref)):
                raise ValueError("exact and float values disagree")


def _unit_laplacian(spec: CirculantSpec) -> list[list[int]]:
    if spec.N < 2:
        raise ValueError("N must be at least 2")
    adj = spec.unit_adjacency()
    N = spec.N
    lap = [[-adj[i][k] for k in range(N)] for i in range(N)]
    for i in range(N):
        lap[i][i] = sum(adj[i])
    return lap


def laplacian(spec: CirculantSpec) -> list[list[Fraction]]:
    """Conductance Laplacian ``D - C`` as a list of rows of Fractions."""
    c = spec.conductance
    return [[c * x for x in row] for row in _unit_laplacian(spec)]


def _check_vertex(spec: CirculantSpec, *vs: int) -> None:
    for v in vs:
        if not 0 <= v < spec.N:
            raise ValueError(f"vertex {v} outside 0..{spec.N - 1}")


def _check_connected(spec: CirculantSpec) -> None:
    g = math.gcd(spec.N, *spec.jumps)
    if g != 1:
        raise DisconnectedError(f"jumps {spec.jumps} split {spec.N} vertices into {g} components")


def _bareiss_solve(a: list[list[int]], rhs: list[list[int]]) -> list[list[Fraction]]:
    """Solve ``a X = rhs`` over the rationals; integer input, fraction-free forward pass."""
    n = len(a)
    k = len(rhs[0]) if rhs else 0
    m = [a[i][:] + rhs[i][:] for i in range(n)]
    width = n + k
    prev = 1
    for p in range(n):
        if m[p][p] == 0:
            swap = next((r for r in range(p + 1, n) if m[r][p] != 0), None)
            if swap is None:
                raise ZeroDivisionError("singular grounded Laplacian (disconnected network)")
            m[p], m[swap] = m[swap], m[p]
        piv = m[p][p]
        row_p = m[p]
        for r in range(p + 1, n):
            row = m[r]
            f = row[p]
            for c in range(p + 1, width):
                row[c] = (piv * row[c] - f * row_p[c]) // prev
            row[p] = 0
        prev = piv
    # back substitution on the integer triangle
    sol = [[Fraction(0)] * k for _ in range(n)]
    for col in range(k):
        for i in range(n - 1, -1, -1):
            acc = Fraction(m[i][n + col])
            row = m[i]
            for c in range(i + 1, n):
                if row[c]:
                    acc -= row[c] * sol[c][col]
            sol[i][col] = acc / row[i]
    return sol


def two_point_resistance_exact(spec: CirculantSpec, u: int, v: int) -> Fraction:
    """Exact resistance between ``u`` and ``v``; vertex ``N-1`` is grounded."""
    _check_vertex(spec, u, v)
    if u == v:
        return Fraction(0)
    _check_connected(spec)
    lap = _unit_laplacian(spec)
    n = spec.N - 1
    a = [row[:n] for row in lap[:n]]
    b = [[0] for _ in range(n)]
    if u < n:
        b[u][0] += 1
    if v < n:
        b[v][0] -= 1
    x = _bareiss_solve(a, b)
    pot = [x[i][0] for i in range(n)] + [Fraction(0)]
    return (pot[u] - pot[v]) / spec.conductance


def resistance_profile_exact(spec: CirculantSpec) -> list[Fraction]:
    """``R(0, v)`` for every vertex ``v``, from a single multi-RHS elimination."""
    _check_connected(spec)
    lap = _unit_laplacian(spec)
    n = spec.N - 1
    a = [row[:n] for row in lap[:n]]
    # column v-1 injects +1 at 0 and -1 at v (v = N-1 is the ground)
    b = [[0] * n for _ in range(n)]
    for v in range(1, spec.N):
        b[0][v - 1] += 1
        if v < n:
            b[v][v - 1] -= 1
    x = _bareiss_solve(a, b)
    out = [Fraction(0)]
    for v in range(1, spec.N):
        pv = x[v][v - 1] if v < n else Fraction(0)
        out.append((x[0][v - 1] - pv) / spec.conductance)
    return out


def _float_laplacian(spec: CirculantSpec) -> np.ndarray:
    if spec.N > FLOAT_MAX_N:
        raise ValueError(f"float route limited to N <= {FLOAT_MAX_N}")
    return np.array(_unit_laplacian(spec), dtype=float) * float(spec.conductance)


def _check_residual(a: np.ndarray, x: np.ndarray, b: np.ndarray) -> None:
    res = float(np.max(np.abs(a @ x - b))) if b.size else 0.0
    scale = 1.0 + float(np.max(np.abs(b))) if b.size else 1.0
    if not math.isfinite(res) or res > RESIDUAL_THRESHOLD * scale:
        raise IllConditionedError(f"solve residual {res:.3g} above threshold")


def two_point_resistance_float(spec: CirculantSpec, u: int, v: int) -> float:
    _check_vertex(spec, u, v)
    if u == v:
        return 0.0
    _check_connected(spec)
    lap = _float_laplacian(spec)
    n = spec.N - 1
    a = lap[:n, :n]
    b = np.zeros(n)
    if u < n:
        b[u] += 1.0
    if v < n:
        b[v] -= 1.0
    x = np.linalg.solve(a, b)
    _check_residual(a, x, b)
    pot = np.append(x, 0.0)
    return float(pot[u] - pot[v])


def resistance_profile_float(spec: CirculantSpec) -> list[float]:
    """``R(0, v)`` for all ``v``; grounds vertex 0 so ``R(0, v)`` is a diagonal entry of the inverse."""
    _check_connected(spec)
    lap = _float_laplacian(spec)
    a = lap[1:, 1:]
    inv = np.linalg.inv(a)
    _check_residual(a, inv, np.eye(a.shape[0]))
    return [0.0] + [float(x) for x in np.diag(inv)]


def _check_ell(N: int, ell: int) -> None:
    if N < 1:
        raise ValueError("N must be a positive integer")
    if not 0 <= ell <= N - 1:
        raise ValueError(f"ell must lie in 0..{N - 1}")


def resistance_cn12_closed(N: int, ell: int) -> QuadExt:
    """Fibonacci closed form for ``C_N(1,2)``, evaluated exactly in Q(sqrt 5).

    ``l(1 - l/N)/5 + (-1)^(l+1) F_l^2 C_N^((-1)^N) / sqrt5 + (-1)^l F_2l / 5``.
    Raises :class:`ClosedFormError` if the sqrt 5 part does not cancel.
    """
    _check_ell(N, ell)
    c = c_constant(N)
    if N % 2:
        c = c.inverse()
    sign = -1 if ell % 2 == 0 else 1
    val = (
        Fraction(ell * (N - ell), 5 * N)
        + c * Fraction(sign * fib(ell) ** 2) / SQRT5
        + Fraction(-sign * fib(2 * ell), 5)
    )
    if not val.is_rational:
        raise ClosedFormError(f"sqrt5 component {val.b} left at N={N}, ell={ell}")
    return val


_SQRT5_F = math.sqrt(5.0)
_PHI_F = (1.0 + _SQRT5_F) / 2.0


def resistance_cn12_closed_float(N: int, ell: int) -> float:
    """Float closed form without the huge cancelling terms.

    With ``q = phi^-2N`` the Fibonacci part becomes
    ``[phi^2l (C-1) + phi^-2l (C+1) - 2(-1)^l C] / (5 sqrt5)``, and
    ``C - 1``, ``C + 1`` are written in terms of ``q`` directly.
    """
    _check_ell(N, ell)
    if ell == 0:
        return 0.0
    q = _PHI_F ** (-2.0 * N)
    if N % 2 == 0:
        c, cp1 = (1 + q) / (1 - q), 2 / (1 - q)
        # phi^2l (C - 1) = 2 phi^(2l-2N) / (1 - q), bounded since l < N
        up = 2 * _PHI_F ** (2.0 * (ell - N)) / (1 - q)
    else:
        c, cp1 = (1 - q) / (1 + q), 2 / (1 + q)
        up = -2 * _PHI_F ** (2.0 * (ell - N)) / (1 + q)
    sgn = 1.0 if ell % 2 == 0 else -1.0
    e = (up + _PHI_F ** (-2.0 * ell) * cp1 - 2.0 * sgn * c) / _SQRT5_F
    return ell * (N - ell) / (5.0 * N) - sgn * e / 5.0


def resistance_cn12_closed_profile(N: int) -> list[float]:
    return [resistance_cn12_closed_float(N, ell) for ell in range(N)]


def resistance_cn12_spectral(N: int, ell: int) -> float:
    """``l(1 - l/N)/5`` plus one fifth of the R1 trigonometric sum."""
    if N < 2:
        raise ValueError("N must be at least 2")
    _check_ell(N, ell)
    if ell == 0:
        return 0.0
    return ell * (N - ell) / (5.0 * N) + _backend.active().r1_sum(N, ell) / 5.0


def resistance_cn12_spectral_profile(N: int) -> list[float]:
    if N < 2:
        raise ValueError("N must be at least 2")
    sums = _backend.active().r1_profile(N)
    return [0.0] + [ell * (N - ell) / (5.0 * N) + sums[ell] / 5.0 for ell in range(1, N)]


def _is_cn12(spec: CirculantSpec) -> bool:
    return sorted(set(spec.jumps)) == [1, 2] and len(spec.jumps) == 2


def effective_resistance(spec: CirculantSpec, u: int, v: int, route: Route) -> ResistanceResult:
    """Dispatch one resistance evaluation; closed and spectral need ``C_N(1,2)``."""
    route = Route(route)
    _check_vertex(spec, u, v)
    if route is Route.SOLVE_EXACT:
        val = two_point_resistance_exact(spec, u, v)
        return ResistanceResult(float(val), route, val)
    if route is Route.SOLVE_FLOAT:
        return ResistanceResult(two_point_resistance_float(spec, u, v), route)
    if not _is_cn12(spec):
        raise ValueError(f"route {route.value} only applies to jumps (1, 2)")
    ell = (v - u) % spec.N
    scale = 1 / spec.conductance
    if route is Route.CLOSED_FORM:
        val = resistance_cn12_closed(spec.N, ell).a * scale
        return ResistanceResult(float(val), route, val)
    return ResistanceResult(resistance_cn12_spectral(spec.N, ell) * float(scale), route)


@dataclass(frozen=True)
class BenchRow:
    N: int
    t_closed_ns: int
    t_solve_ns: int
    abs_diff: float

    @property
    def speedup(self) -> float:
        return self.t_solve_ns / max(self.t_closed_ns, 1)


def bench_resistance(N_list: Iterable[int], repeat: int = 1) -> list[BenchRow]:
    """Time the closed-form profile against a dense float solve of ``C_N(1,2)``.

    Each side computes ``R(0, l)`` for every ``l``; the best of ``repeat`` runs is kept.
    """
    rows = []
    for N in N_list:
        spec = CirculantSpec.cn12(N)
        t_closed = t_solve = None
        closed = solved = None
        for _ in range(max(1, repeat)):
            t0 = time.perf_counter_ns()
            closed = resistance_cn12_closed_profile(N)
            t1 = time.perf_counter_ns()
            solved = resistance_profile_float(spec)
            t2 = time.perf_counter_ns()
            t_closed = t1 - t0 if t_closed is None else min(t_closed, t1 - t0)
            t_solve = t2 - t1 if t_solve is None else min(t_solve, t2 - t1)
        diff = max((abs(a - b) for a, b in zip(closed, solved)), default=0.0)
        rows.append(BenchRow(N, t_closed, t_solve, diff))
    return rows


def format_bench_csv(rows: Sequence[BenchRow]) -> str:
    lines = ["N,t_closed_ns,t_solve_ns,abs_diff"]
    lines += [f"{r.N},{r.t_closed_ns},{r.t_solve_ns},{r.abs_diff:.3e}" for r in rows]
    return "\n".join(lines) + "\n"
