from __future__ import annotations

import math

import numpy as np
import pytest
import scipy.integrate
import scipy.special

from toda_kdv.hill import (counting_box, derivative_zeros_hill, discriminant_roots, eigenfunction_bound_check,
                           galerkin_eigs, hill_discriminant, hill_discriminant_extrapolated, m_of,
                           product_representation_check)
from toda_kdv.profiles import HillPotential, TrigPoly, eval_trigpoly, hill_potentials, norms

# q = -2 cos(4 pi x): with x = t / 2 pi this is Mathieu's equation with a = lambda / 4 pi^2, q_M = 1 / 4 pi^2
MATHIEU_Q = 1.0 / (4.0 * math.pi ** 2)
FROZEN_COS = [-0.0126642592766705, 38.4752613320389, 40.475241281538, 157.911559565316, 157.924223810484]
FROZEN_DOT1_SIN = 39.4760429203524  # dense d1 sign-change scan, then bisection
COS_Q = HillPotential(TrigPoly(0.0, (0.0, -2.0)), "-")
SIN_Q = HillPotential(TrigPoly(0.0, (), (0.0, 1.0)), "-")
ZERO_Q = HillPotential(TrigPoly(), "-")


def _mathieu_spectrum(n_max: int) -> np.ndarray:
    vals = [scipy.special.mathieu_a(0, MATHIEU_Q)]
    for n in range(1, n_max + 1):
        vals += [scipy.special.mathieu_b(n, MATHIEU_Q), scipy.special.mathieu_a(n, MATHIEU_Q)]
    return np.sort(np.array(vals)) * 4.0 * math.pi ** 2


def _monodromy_trace(q: HillPotential, lam: float) -> float:
    """Independent oracle: adaptive DOP853 on the fundamental system over one period."""
    def rhs(x, y):
        v = float(eval_trigpoly(q.q, x)) - lam
        return [y[1], v * y[0], y[3], v * y[2]]

    sol = scipy.integrate.solve_ivp(rhs, (0.0, 0.5), [1.0, 0.0, 0.0, 1.0], method="DOP853", rtol=1e-12, atol=1e-13)
    y = sol.y[:, -1]
    return y[0] + y[3]


def test_galerkin_matches_mathieu():
    hs = galerkin_eigs(COS_Q)
    np.testing.assert_allclose(hs.lambdas[:11], _mathieu_spectrum(5), rtol=1e-11, atol=1e-11)
    np.testing.assert_allclose(hs.lambdas[:5], FROZEN_COS, atol=1e-9)


def test_discriminant_matches_adaptive_oracle():
    for lam in (-3.0, 12.5, 39.0, 160.0):
        d = hill_discriminant(SIN_Q, np.array([lam])).value[0].real
        assert d == pytest.approx(_monodromy_trace(SIN_Q, lam), rel=1e-8, abs=1e-8)


def test_extrapolated_discriminant_is_sharper():
    lam = np.array([5.0, 80.0, 300.0])
    ref = np.array([_monodromy_trace(COS_Q, x) for x in lam])
    err = np.abs(hill_discriminant_extrapolated(COS_Q, lam).value.real - ref)
    assert err.max() < 1e-9


def test_free_closed_forms():
    hs = galerkin_eigs(ZERO_Q)
    n = np.arange(1, 33)
    expect = np.concatenate([[0.0], np.repeat((2 * np.pi * n) ** 2, 2)])
    np.testing.assert_allclose(hs.lambdas[:65], expect, atol=1e-8)
    lam = np.linspace(-10.0, 500.0, 60)
    d = hill_discriminant(ZERO_Q, lam).value
    closed = 2.0 * np.cos(np.sqrt(lam.astype(complex)) / 2.0)
    np.testing.assert_allclose(d, closed, atol=1e-8)


def test_discriminant_roots_agree_with_galerkin():
    for q in (COS_Q, SIN_Q, ZERO_Q):
        hs = galerkin_eigs(q)
        roots = discriminant_roots(q, hs, 2)
        np.testing.assert_allclose(roots, hs.lambdas[:5], atol=1e-7)


def test_derivative_zero_frozen():
    hs = galerkin_eigs(SIN_Q)
    z = derivative_zeros_hill(SIN_Q, hs, 3)
    assert z[0] == pytest.approx(FROZEN_DOT1_SIN, abs=1e-8)
    for n, x in enumerate(z, start=1):
        assert hs.lambdas[2 * n - 1] <= x <= hs.lambdas[2 * n]


def test_product_representation():
    lam = np.array([-5.0 + 1j, 20.0, 45.0 - 2j, 100.0 + 0.5j])
    for q in (COS_Q, SIN_Q):
        assert product_representation_check(q, galerkin_eigs(q), lam).max() < 1e-5


def test_counting_box_frozen():
    box = counting_box(galerkin_eigs(COS_Q), 1024, 0.3)
    assert box.m == 8 and box.f_of_m == 1
    assert box.rect == pytest.approx((-2.0126642592766704, 42.47524128153773, -2.0, 2.0), abs=1e-9)


def test_m_of_exact_powers():
    assert m_of(256, 0.25) == 4 and m_of(1024, 0.3) == 8 and m_of(16, 0.5) == 4


def test_eigenfunction_bounds_hold(standard):
    for _, pp in standard:
        nb = norms(pp)
        for q in hill_potentials(pp):
            hs = galerkin_eigs(q)
            for N in (32, 128, 512):
                rep = eigenfunction_bound_check(hs, nb, N, 0.25)
                assert rep["pass"] and not rep["skipped"]


def test_strict_mode_skips_without_precondition(cos_pair):
    q = hill_potentials(cos_pair)[1]
    rep = eigenfunction_bound_check(galerkin_eigs(q), norms(cos_pair), 64, 0.25, strict=True)
    assert rep["skipped"] and rep["rows"] == []


def test_eigenfunctions_normalized():
    hs = galerkin_eigs(SIN_Q)
    for g in hs.eigenfunctions[:9]:
        assert g.to_fourier().l2() == pytest.approx(1.0, abs=1e-12)
