import cmath
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from trigfib.kernels import (
    LOG_PHI,
    PoleError,
    ResolventParams,
    SumVariant,
    bn1_closed_cheb,
    cheb_u_exact,
    r1_closed_cheb,
    resolvent_closed,
    resolvent_closed_exact,
    resolvent_spectral,
    trig_sum,
    wu_closed,
    wu_spectral,
    wu_spectral_profile,
)

mpmath.mp.dps = 40


def mp_resolvent(m, beta, ell, s):
    beta = mpmath.mpf(beta.numerator) / beta.denominator
    s = mpmath.mpc(s)
    tot = mpmath.mpc(0)
    for j in range(m):
        tot += mpmath.expjpi(2 * mpmath.mpf(j * ell) / m) / (s + 2 * mpmath.sin(mpmath.pi * (j + beta) / m) ** 2)
    return complex(tot / m)


def mp_wu(m, ell, lam):
    lam = mpmath.mpf(lam)
    tot = mpmath.mpf(0)
    for j in range(m):
        tot += mpmath.cos(2 * mpmath.pi * ell * j / m) / (mpmath.cosh(lam) - mpmath.cos(2 * mpmath.pi * j / m))
    return float(tot / m)


def mp_recip_sum(M, j0, j1, a, b):
    return float(mpmath.fsum(1 / (a + b * mpmath.sin(mpmath.pi * j / M) ** 2) for j in range(j0, j1 + 1)))


def R(m, beta, ell, s):
    return ResolventParams(m, beta, ell, s)


def test_resolvent_examples():
    assert resolvent_spectral(R(2, Fraction(1, 2), 0, 1)) == pytest.approx(0.5, abs=1e-15)
    assert resolvent_spectral(R(2, 0, 1, 1)) == pytest.approx(1 / 3, abs=1e-15)
    assert resolvent_spectral(R(1, 0, 0, 2)) == pytest.approx(0.5, abs=1e-15)
    assert resolvent_closed(R(2, Fraction(1, 2), 0, 1)) == pytest.approx(0.5, abs=1e-15)
    assert resolvent_closed(R(2, 0, 1, 1)) == pytest.approx(1 / 3, abs=1e-15)
    s = 1e6
    assert resolvent_closed(R(3, 0, 0, s)).real * s == pytest.approx(1.0, rel=1e-5)


def test_resolvent_exact_examples():
    assert resolvent_closed_exact(2, 0, 0, 1) == Fraction(2, 3)
    assert resolvent_closed_exact(2, Fraction(1, 2), 0, 1) == Fraction(1, 2)
    with pytest.raises(PoleError):
        resolvent_closed_exact(2, 0, 0, 0)
    with pytest.raises(ValueError):
        resolvent_closed_exact(4, Fraction(1, 4), 0, 1)
    with pytest.raises(ValueError):
        resolvent_closed_exact(4, Fraction(1, 2), 1, 1)


def test_params_validation():
    with pytest.raises(ValueError):
        R(0, 0, 0, 1)
    with pytest.raises(ValueError):
        R(3, 1, 0, 1)
    with pytest.raises(ValueError):
        R(3, 0, 3, 1)
    p = R(3, "1/4", 1, 2)
    assert p.beta == Fraction(1, 4) and isinstance(p.s, complex)
    assert R(3, 0, 1, 2).beta == Fraction(0)


def test_pole_rejected():
    # s = -2 sin^2(pi/4) = -1 is a pole for m = 4, beta = 0
    for fn in (resolvent_spectral, resolvent_closed):
        with pytest.raises(PoleError):
            fn(R(4, 0, 1, -1.0))
        with pytest.raises(PoleError):
            fn(R(4, 0, 1, -1.0 + 5e-10))
        with pytest.raises(PoleError):
            fn(R(5, 0, 0, 0))
    # just outside the tolerance is fine
    resolvent_spectral(R(4, 0, 1, -1.0 + 1e-6))


@pytest.mark.parametrize("m", [1, 2, 3, 7, 16, 33, 100])
@pytest.mark.parametrize("beta", [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(2, 3)])
@pytest.mark.parametrize("s", [0.5, 2.0, 3 + 4j, -0.3 + 0.2j])
def test_resolvent_against_mp(m, beta, s):
    for ell in sorted({0, 1 % m, m // 2, m - 1}):
        ref = mp_resolvent(m, beta, ell, s)
        for fn in (resolvent_spectral, resolvent_closed):
            got = fn(R(m, beta, ell, s))
            assert abs(got - ref) <= 1e-12 * (1 + abs(ref))


@pytest.mark.parametrize("m", [3, 8, 40, 200])
def test_resolvent_exact_matches_float(m):
    for s in (Fraction(1, 2), Fraction(2), Fraction(5)):
        for ell in (0, 1, m // 2, m - 1):
            ex = resolvent_closed_exact(m, 0, ell, s)
            fl = resolvent_spectral(R(m, 0, ell, float(s)))
            assert fl == pytest.approx(float(ex), rel=1e-12)
        ex = resolvent_closed_exact(m, Fraction(1, 2), 0, s)
        assert resolvent_spectral(R(m, Fraction(1, 2), 0, float(s))) == pytest.approx(float(ex), rel=1e-12)


def test_resolvent_large_m_closed_is_finite():
    v = resolvent_closed(R(512, Fraction(1, 4), 1, 5.0))
    ref = resolvent_spectral(R(512, Fraction(1, 4), 1, 5.0))
    assert cmath.isfinite(v)
    assert abs(v - ref) <= 1e-10 * (1 + abs(ref))


@settings(deadline=None, max_examples=60)
@given(st.integers(2, 80), st.data())
def test_resolvent_beta0_reflection(m, data):
    ell = data.draw(st.integers(1, m - 1))
    s = data.draw(st.sampled_from([0.5, 1.0, 2.0, 3 + 4j]))
    a = resolvent_spectral(R(m, 0, ell, s))
    b = resolvent_spectral(R(m, 0, m - ell, s))
    assert abs(a - b) <= 1e-13 * (1 + abs(a))


def test_cheb_u_minus_one():
    assert cheb_u_exact(-1, Fraction(7, 3)) == 0


def test_wu_examples():
    ref1 = 1 / (math.cosh(1) - 1)
    assert wu_spectral(1, 0, 1.0) == pytest.approx(ref1, rel=1e-14)
    assert wu_closed(1, 0, 1.0) == pytest.approx(ref1, rel=1e-14)
    ref2 = math.cosh(1) / math.sinh(1) ** 2
    assert ref2 == pytest.approx(1.117286, abs=1e-6)
    assert wu_spectral(2, 0, 1.0) == pytest.approx(ref2, rel=1e-14)
    assert wu_closed(2, 0, 1.0) == pytest.approx(ref2, rel=1e-14)
    assert wu_spectral(4, 1, 3 * LOG_PHI) == pytest.approx(0.125, rel=1e-14)
    assert wu_closed(4, 1, 3 * LOG_PHI) == pytest.approx(0.125, rel=1e-14)


def test_wu_domain():
    with pytest.raises(ValueError):
        wu_spectral(4, 0, 0.0)
    with pytest.raises(ValueError):
        wu_closed(4, 0, -1.0)
    with pytest.raises(ValueError):
        wu_spectral(4, 4, 1.0)


@pytest.mark.parametrize("lam", [0.1, 1.0, 3 * LOG_PHI])
@pytest.mark.parametrize("m", [1, 2, 5, 16, 63])
def test_wu_against_mp(lam, m):
    prof = wu_spectral_profile(m, lam)
    for ell in range(m):
        ref = mp_wu(m, ell, lam)
        assert prof[ell] == wu_spectral(m, ell, lam)
        assert wu_closed(m, ell, lam) == pytest.approx(ref, rel=1e-13)
        # spectral side carries cancellation error relative to the largest term
        assert abs(prof[ell] - ref) <= 1e-14 * wu_closed(m, 0, lam) * 4


def test_wu_closed_no_overflow():
    v = wu_closed(512, 256, 10.0)
    assert v == 0.0 or math.isfinite(v)
    assert math.isfinite(wu_closed(512, 0, 10.0))
    # cosh(m lam/2) / sinh(m lam/2) is 1 in double precision here
    assert wu_closed(512, 0, 10.0) == pytest.approx(1 / math.sinh(10), rel=1e-14)


def test_trig_sum_examples():
    assert trig_sum(SumVariant.SUMEQ3, m=1, x=1) == pytest.approx(1.2, abs=1e-15)
    assert trig_sum(SumVariant.SUMEQ2, m=1, x=1) == pytest.approx(1.5, abs=1e-15)
    assert trig_sum(SumVariant.SUMEQ4, m=1, x=1) == pytest.approx(1.5, abs=1e-15)
    assert trig_sum(SumVariant.R1SUM, N=3, ell=1) == pytest.approx(1.0, abs=1e-15)
    assert trig_sum(SumVariant.BN1SUM, N=5, ell=1) == pytest.approx(0.4, abs=1e-15)
    assert trig_sum(SumVariant.SUM4, m=1) == pytest.approx(1.2, abs=1e-15)
    assert trig_sum(SumVariant.PROP2SUM, m=4, ell=1) == pytest.approx(0.125, rel=1e-14)
    assert trig_sum("sum5", m=1) == pytest.approx(1.5, abs=1e-15)


def test_trig_sum_domain():
    with pytest.raises(ValueError):
        trig_sum(SumVariant.SUMEQ2, m=2, x=0)
    with pytest.raises(ValueError):
        trig_sum(SumVariant.SUMEQ2, m=2)
    with pytest.raises(ValueError):
        trig_sum(SumVariant.BN1SUM, N=3, ell=1)
    with pytest.raises(ValueError):
        trig_sum(SumVariant.BN1SUM, N=6, ell=1)
    with pytest.raises(ValueError):
        trig_sum(SumVariant.BN1SUM, N=7, ell=4)
    with pytest.raises(ValueError):
        trig_sum(SumVariant.SUM3, m=0)
    with pytest.raises(ValueError):
        trig_sum("nope", m=1)


@pytest.mark.parametrize("m", [1, 2, 5, 17, 64])
def test_trig_sum_against_mp(m):
    for x in (0.5, 1.0, 7.0):
        M = 2 * m
        assert trig_sum(SumVariant.SUMEQ2, m=m, x=x) == pytest.approx(mp_recip_sum(M, 0, M - 1, x * x, 1), rel=1e-14)
        assert trig_sum(SumVariant.SUMEQ3, m=m, x=x) == pytest.approx(mp_recip_sum(M, 0, M - 1, x * x, 4), rel=1e-14)
        if m > 1:
            assert trig_sum(SumVariant.SEIFFERT, m=m, x=x) == pytest.approx(mp_recip_sum(M, 1, m - 1, x * x, 1), rel=1e-14)
    assert trig_sum(SumVariant.SUM3, m=m) == pytest.approx(mp_recip_sum(2 * m, 1, 2 * m - 1, 0.25, 1), rel=1e-14)


def test_r1_closed_examples():
    assert r1_closed_cheb(3, 1) == 1
    assert r1_closed_cheb(2, 1) == 2
    assert r1_closed_cheb(9, 0) == 0
    for N in (2, 3, 10, 57):
        for ell in range(N):
            assert trig_sum(SumVariant.R1SUM, N=N, ell=ell) == pytest.approx(float(r1_closed_cheb(N, ell)), rel=1e-12, abs=1e-15)


def test_bn1_closed_examples():
    assert bn1_closed_cheb(5, 1) == Fraction(2, 5)
    assert bn1_closed_cheb(5, 2) == Fraction(3, 5)
    assert bn1_closed_cheb(9, 0) == 0
    with pytest.raises(ValueError):
        bn1_closed_cheb(3, 1)
    for N in range(5, 102, 2):
        for ell in range((N + 1) // 2):
            exact = float(bn1_closed_cheb(N, ell))
            assert trig_sum(SumVariant.BN1SUM, N=N, ell=ell) == pytest.approx(exact, rel=1e-10, abs=1e-15)
