from __future__ import annotations


import mpmath
import numpy as np
import pytest
import scipy.linalg

from toda_kdv.jacobi import (build_L, build_Q, casimir_q_minus_one, casimirs, char_product_check,
                             derivative_zeros, discriminant, eig_spectrum, floquet_subset, spectrum_of)
from toda_kdv.profiles import ProfilePair, TrigPoly, sample_flaschka


def _inertia_kth(L: np.ndarray, k: int, lo: float = -2.5, hi: float = 2.5) -> float:
    """k-th eigenvalue by bisection on the LDL^T inertia count (Sylvester's law)."""
    eye = np.eye(len(L))
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        _, d, _ = scipy.linalg.ldl(L - mid * eye)
        if np.sum(np.linalg.eigvalsh(d) < 0) > k:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# cos profile, N = 64: eigenvalues 0, 1, 2, 63, 64, 126, 127 from the inertia bisection above
FROZEN_COS_64 = {0: -2.00000077492, 1: -1.99765214, 2: -1.99753007, 126: 1.99765214, 127: 2.00000077492}


def test_spectrum_matches_inertia_oracle_live(cos_pair):
    Q = build_L(build_Q(cos_pair, 16))
    ev = spectrum_of(cos_pair, 16).values
    oracle = [_inertia_kth(Q, k) for k in range(32)]
    np.testing.assert_allclose(ev, oracle, atol=1e-12)


def test_spectrum_frozen_oracle(cos_pair):
    ev = spectrum_of(cos_pair, 64).values
    for k, v in FROZEN_COS_64.items():
        assert ev[k] == pytest.approx(v, abs=5e-9)
    assert abs(ev[63]) < 1e-14 and abs(ev[64]) < 1e-14


def test_free_spectrum_closed_form():
    for N in (2, 3, 8, 33):
        ev = spectrum_of(ProfilePair(), N).values
        closed = np.sort(-2 * np.cos(np.arange(2 * N) * np.pi / N))
        np.testing.assert_allclose(ev, closed, atol=1e-13)


def test_n2_offdiagonal_is_sum():
    m = sample_flaschka(ProfilePair(TrigPoly(0.0, (1.0,)), TrigPoly()), 2)
    L = build_L(m)
    assert L[0, 1] == pytest.approx(2.0, abs=1e-15)


def test_floquet_subset_is_spectrum_of_L(standard):
    for _, pp in standard:
        for N in (5, 8, 13):
            own = np.sort(scipy.linalg.eigvalsh(build_L(sample_flaschka(pp, N))))
            np.testing.assert_allclose(np.sort(floquet_subset(spectrum_of(pp, N))), own, atol=1e-13)


def test_discriminant_free_closed_form():
    mu = np.linspace(-1.99, 1.99, 20)
    for N in (8, 64, 256):
        d = discriminant(sample_flaschka(ProfilePair(), N), mu)
        np.testing.assert_allclose(d.value.real, 2 * np.cos(N * np.arccos(mu / 2)), atol=1e-10)


def test_discriminant_derivatives_match_differences(standard):
    m = sample_flaschka(standard[2][1], 12)
    mu, h = np.array([-1.3, 0.2, 1.7]), 1e-5
    d = discriminant(m, mu)
    dp, dm = discriminant(m, mu + h).value, discriminant(m, mu - h).value
    np.testing.assert_allclose(d.d1, (dp - dm) / (2 * h), rtol=1e-6)
    np.testing.assert_allclose(d.d2, (dp - 2 * d.value + dm) / h ** 2, rtol=1e-3)


def test_discriminant_vanishing_at_periodic_eigenvalues(standard):
    for _, pp in standard:
        m = sample_flaschka(pp, 16)
        d = discriminant(m, spectrum_of(pp, 16).values).value
        assert np.abs(d.real ** 2 - 4).max() < 1e-9


def test_casimir_against_mpmath(cos_pair):
    mpmath.mp.dps = 40
    N = 64
    exact = mpmath.fprod([1 + mpmath.cos(2 * mpmath.pi * n / N) / (4 * N * N) for n in range(1, N + 1)]) - 1
    got = casimir_q_minus_one(sample_flaschka(cos_pair, N))
    assert got == pytest.approx(float(exact), rel=1e-10)
    assert N ** 3 * abs(got) == pytest.approx(1 / 64, rel=1e-3)


def test_momentum_casimir_vanishes(standard):
    for _, pp in standard:
        _, p = casimirs(sample_flaschka(pp, 32))
        assert abs(p) <= 1e-15


def test_char_product_small_grid(standard):
    mu = (np.linspace(-2.2, 2.2, 5)[:, None] + 1j * np.linspace(-0.2, 0.2, 5)[None, :]).ravel()
    for _, pp in standard:
        for N in (32, 1024):
            m = sample_flaschka(pp, N)
            assert char_product_check(m, spectrum_of(pp, N), mu).max() <= 1e-6


def test_derivative_zeros_bracketed(standard):
    for _, pp in standard:
        m = sample_flaschka(pp, 64)
        s = spectrum_of(pp, 64)
        z = derivative_zeros(m, s, [1, 2, 3])
        for n, x in zip((1, 2, 3), z):
            assert s.values[2 * n - 1] <= x <= s.values[2 * n]
        d1 = discriminant(m, z).d1
        assert np.abs(d1).max() <= 1e-6 * np.abs(discriminant(m, z).d2).max()


def test_eig_spectrum_doubles_input(cos_pair):
    m = sample_flaschka(cos_pair, 10)
    np.testing.assert_array_equal(eig_spectrum(m).values, eig_spectrum(m.double()).values)
    assert eig_spectrum(m).n_sites == 10
