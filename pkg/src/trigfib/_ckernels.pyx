# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled float kernels; see _pykernels.py for the reference semantics."""

from libc.math cimport cos, sin, sinh, fabs, M_PI
from libc.stdlib cimport malloc, free

NAME = "compiled"


cdef inline double _sin2(long long k, long long M) noexcept nogil:
    cdef long long kk = k % M
    cdef double s
    if 2 * kk > M:
        kk = M - kk
    s = sin(M_PI * <double>kk / <double>M)
    return s * s


cdef inline double _sin2_shifted(long long j, double beta, long long M) noexcept nogil:
    cdef double t = <double>j + beta
    cdef double u = <double>M - t
    cdef double s
    if u < t:
        t = u
    s = sin(M_PI * t / <double>M)
    return s * s


cdef inline void _neumaier(double* total, double* comp, double x) noexcept nogil:
    cdef double t = total[0] + x
    if fabs(total[0]) >= fabs(x):
        comp[0] += (total[0] - t) + x
    else:
        comp[0] += (x - t) + total[0]
    total[0] = t


def recip_sin2_sum(long long M, long long j0, long long j1, double a, double b):
    cdef double total = 0.0, comp = 0.0
    cdef long long j
    with nogil:
        for j in range(j0, j1 + 1):
            _neumaier(&total, &comp, 1.0 / (a + b * _sin2(j, M)))
    return total + comp


def resolvent_sum(long long m, double beta, long long ell, double s_re, double s_im):
    cdef double re = 0.0, re_c = 0.0, im = 0.0, im_c = 0.0
    cdef double ang, c, s, d_re, d_im, mag
    cdef long long j, k
    with nogil:
        for j in range(m):
            k = (j * ell) % m
            ang = 2.0 * M_PI * <double>k / <double>m
            c = cos(ang)
            s = sin(ang)
            d_re = s_re + 2.0 * _sin2_shifted(j, beta, m)
            d_im = s_im
            mag = d_re * d_re + d_im * d_im
            _neumaier(&re, &re_c, (c * d_re + s * d_im) / mag)
            _neumaier(&im, &im_c, (s * d_re - c * d_im) / mag)
    return (re + re_c) / <double>m, (im + im_c) / <double>m


cdef double _wu(long long m, long long ell, double* cos_tab, double* den) noexcept nogil:
    cdef double total = 0.0, comp = 0.0
    cdef long long j, k = 0
    # k tracks (j*ell) % m without a division per term
    for j in range(m):
        _neumaier(&total, &comp, cos_tab[k] / den[j])
        k += ell
        if k >= m:
            k -= m
    return (total + comp) / <double>m


cdef int _wu_tables(long long m, double lam, double** cos_tab, double** den) except -1:
    cdef double h = sinh(0.5 * lam)
    cdef double base = 2.0 * h * h
    cdef long long j
    cos_tab[0] = <double*>malloc(m * sizeof(double))
    den[0] = <double*>malloc(m * sizeof(double))
    if cos_tab[0] == NULL or den[0] == NULL:
        free(cos_tab[0])
        free(den[0])
        raise MemoryError()
    for j in range(m):
        cos_tab[0][j] = cos(2.0 * M_PI * <double>j / <double>m)
        den[0][j] = base + 2.0 * _sin2(j, m)
    return 0


def wu_sum(long long m, long long ell, double lam):
    cdef double* cos_tab = NULL
    cdef double* den = NULL
    cdef double out
    _wu_tables(m, lam, &cos_tab, &den)
    with nogil:
        out = _wu(m, ell, cos_tab, den)
    free(cos_tab)
    free(den)
    return out


def wu_profile(long long m, double lam):
    cdef double* cos_tab = NULL
    cdef double* den = NULL
    cdef double* out = NULL
    cdef long long ell
    _wu_tables(m, lam, &cos_tab, &den)
    out = <double*>malloc(m * sizeof(double))
    if out == NULL:
        free(cos_tab)
        free(den)
        raise MemoryError()
    with nogil:
        for ell in range(m):
            out[ell] = _wu(m, ell, cos_tab, den)
    result = [out[ell] for ell in range(m)]
    free(cos_tab)
    free(den)
    free(out)
    return result


cdef double _r1(long long N, long long ell, double* s2, double* w) noexcept nogil:
    cdef double total = 0.0, comp = 0.0
    cdef long long j, k = ell % N
    for j in range(1, N):
        _neumaier(&total, &comp, s2[k] / w[j])
        k += ell
        if k >= N:
            k -= N
    return 4.0 * (total + comp) / (5.0 * <double>N)


cdef int _r1_tables(long long N, double** s2, double** w) except -1:
    cdef long long j
    s2[0] = <double*>malloc(N * sizeof(double))
    w[0] = <double*>malloc(N * sizeof(double))
    if s2[0] == NULL or w[0] == NULL:
        free(s2[0])
        free(w[0])
        raise MemoryError()
    for j in range(N):
        s2[0][j] = _sin2(j, N)
        w[0][j] = 1.0 - 0.8 * s2[0][j]
    return 0


def r1_sum(long long N, long long ell):
    cdef double* s2 = NULL
    cdef double* w = NULL
    cdef double out
    _r1_tables(N, &s2, &w)
    with nogil:
        out = _r1(N, ell, s2, w)
    free(s2)
    free(w)
    return out


def r1_profile(long long N):
    cdef double* s2 = NULL
    cdef double* w = NULL
    cdef double* out = NULL
    cdef long long ell
    _r1_tables(N, &s2, &w)
    out = <double*>malloc(N * sizeof(double))
    if out == NULL:
        free(s2)
        free(w)
        raise MemoryError()
    with nogil:
        for ell in range(N // 2 + 1):
            out[ell] = _r1(N, ell, s2, w)
        for ell in range(N // 2 + 1, N):
            out[ell] = out[N - ell]
    result = [out[ell] for ell in range(N)]
    free(s2)
    free(w)
    free(out)
    return result


def bn1_sum(long long N, long long ell):
    cdef double total = 0.0, comp = 0.0
    cdef long long n
    with nogil:
        for n in range((N - 1) // 2 + 1):
            _neumaier(&total, &comp, _sin2(2 * n * ell, N) / (<double>N - 4.0 * _sin2(n, N)))
    return 4.0 * (total + comp) / <double>N
