"""Compiled vs pure-Python float kernels: timings and bitwise agreement."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _backend

KERNELS = (
    ("r1_profile", lambda k, n: k.r1_profile(n)),
    ("wu_profile", lambda k, n: k.wu_profile(n, 1.0)),
    ("resolvent_sum", lambda k, n: [k.resolvent_sum(n, 0.25, ell, 0.5, 0.25) for ell in range(0, n, max(1, n // 16))]),
)


@dataclass(frozen=True)
class BackendRow:
    kernel: str
    N: int
    t_compiled_ns: int
    t_python_ns: int
    identical: bool

    @property
    def speedup(self) -> float:
        return self.t_python_ns / max(self.t_compiled_ns, 1)


def _best(fn, repeat: int):
    best, out = None, None
    for _ in range(repeat):
        t0 = time.perf_counter_ns()
        out = fn()
        dt = time.perf_counter_ns() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def backend_rows(N_list: Iterable[int], repeat: int = 1) -> list[BackendRow]:
    if "compiled" not in _backend.available_backends():
        raise RuntimeError("compiled kernels are not built; reinstall with a C compiler and Cython")
    comp = _backend.get_backend("compiled")
    py = _backend.get_backend("python")
    rows = []
    for N in N_list:
        for name, call in KERNELS:
            tc, rc = _best(lambda: call(comp, N), repeat)
            tp, rp = _best(lambda: call(py, N), repeat)
            rows.append(BackendRow(name, N, tc, tp, rc == rp))
    return rows


def format_backend_csv(rows: Sequence[BackendRow]) -> str:
    lines = ["kernel,N,t_compiled_ns,t_python_ns,speedup,identical"]
    lines += [
        f"{r.kernel},{r.N},{r.t_compiled_ns},{r.t_python_ns},{r.speedup:.1f},{int(r.identical)}"
        for r in rows
    ]
    return "\n".join(lines) + "\n"
