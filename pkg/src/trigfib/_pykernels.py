"""Pure-Python float kernels.

Every routine mirrors ``_ckernels.pyx`` operation for operation (same term
order, same Neumaier compensation, same libm calls), so both backends return
bit-identical results on one platform.
"""

from math import cos, pi, sin, sinh

NAME = "python"


def _sin2(k, M):
    # sin^2(pi*k/M) for integer k, argument folded into [0, pi/2]
    kk = k % M
    if 2 * kk > M:
        kk = M - kk
    s = sin(pi * kk / M)
    return s * s


def _sin2_shifted(j, beta, M):
    # sin^2(pi*(j+beta)/M) for 0 <= j < M, 0 <= beta < 1
    t = j + beta
    u = M - t
    if u < t:
        t = u
    s = sin(pi * t / M)
    return s * s


def recip_sin2_sum(M, j0, j1, a, b):
    """Sum over j0 <= j <= j1 of 1/(a + b*sin^2(pi*j/M))."""
    total = 0.0
    comp = 0.0
    for j in range(j0, j1 + 1):
        x = 1.0 / (a + b * _sin2(j, M))
        t = total + x
        if abs(total) >= abs(x):
            comp += (total - t) + x
        else:
            comp += (x - t) + total
        total = t
    return total + comp


def resolvent_sum(m, beta, ell, s_re, s_im):
    """(1/m) sum_j exp(2 pi i j ell/m) / (s + 2 sin^2(pi (j+beta)/m)) as (re, im)."""
    re = 0.0
    re_c = 0.0
    im = 0.0
    im_c = 0.0
    for j in range(m):
        k = (j * ell) % m
        ang = 2.0 * pi * k / m
        c = cos(ang)
        s = sin(ang)
        d_re = s_re + 2.0 * _sin2_shifted(j, beta, m)
        d_im = s_im
        mag = d_re * d_re + d_im * d_im
        x = (c * d_re + s * d_im) / mag
        y = (s * d_re - c * d_im) / mag
        t = re + x
        if abs(re) >= abs(x):
            re_c += (re - t) + x
        else:
            re_c += (x - t) + re
        re = t
        t = im + y
        if abs(im) >= abs(y):
            im_c += (im - t) + y
        else:
            im_c += (y - t) + im
        im = t
    return (re + re_c) / m, (im + im_c) / m


def wu_sum(m, ell, lam):
    """(1/m) sum_j cos(2 ell j pi/m) / (cosh lam - cos(2 j pi/m)).

    The denominator is formed as 2 sinh^2(lam/2) + 2 sin^2(j pi/m).
    """
    h = sinh(0.5 * lam)
    base = 2.0 * h * h
    total = 0.0
    comp = 0.0
    for j in range(m):
        k = (j * ell) % m
        x = cos(2.0 * pi * k / m) / (base + 2.0 * _sin2(j, m))
        t = total + x
        if abs(total) >= abs(x):
            comp += (total - t) + x
        else:
            comp += (x - t) + total
        total = t
    return (total + comp) / m


def wu_profile(m, lam):
    """``wu_sum(m, ell, lam)`` for every ell in 0..m-1."""
    return [wu_sum(m, ell, lam) for ell in range(m)]


def r1_sum(N, ell):
    """(4/(5N)) sum_{j=1}^{N-1} sin^2(j ell pi/N) / (1 - (4/5) sin^2(j pi/N))."""
    total = 0.0
    comp = 0.0
    for j in range(1, N):
        x = _sin2(j * ell, N) / (1.0 - 0.8 * _sin2(j, N))
        t = total + x
        if abs(total) >= abs(x):
            comp += (total - t) + x
        else:
            comp += (x - t) + total
        total = t
    return 4.0 * (total + comp) / (5.0 * N)


def r1_profile(N):
    """``r1_sum(N, ell)`` for ell in 0..N-1, filled by the ell <-> N-ell symmetry."""
    out = [0.0] * N
    for ell in range(N // 2 + 1):
        out[ell] = r1_sum(N, ell)
    for ell in range(N // 2 + 1, N):
        out[ell] = out[N - ell]
    return out


def bn1_sum(N, ell):
    """(4/N) sum_{n=0}^{(N-1)/2} sin^2(2 n ell pi/N) / (N - 4 sin^2(n pi/N))."""
    total = 0.0
    comp = 0.0
    for n in range((N - 1) // 2 + 1):
        x = _sin2(2 * n * ell, N) / (N - 4.0 * _sin2(n, N))
        t = total + x
        if abs(total) >= abs(x):
            comp += (total - t) + x
        else:
            comp += (x - t) + total
        total = t
    return 4.0 * (total + comp) / N
