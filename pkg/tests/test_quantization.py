from __future__ import annotations

import math

import numpy as np
import pytest

from _helpers import random_fourier, random_trig
from toda_kdv.profiles import FourierPoly, ProfilePair, TrigPoly, c_norm, coupling, frequency_double, norms
from toda_kdv.quantization import (FockState, SymbolParams, T_matrix, apply_T, apply_shift, basis_state,
                                   bulk_quasimode, commutator_apply, commutator_norm, edge_gram_deviation,
                                   edge_quasimode, free_symbol, inner_product_formula, lagrangian_state,
                                   potential_bound, potential_residual, commutator_identity_residual, overlap_defect,
                                   symbol_bound, symbol_residual, quasimode_certificate,
                                   quasimode_pair_certificate, quasimode_residual, symbol_apply, symbol_shift)


def _random_state(rng, N):
    return FockState(N, rng.normal(size=2 * N) + 1j * rng.normal(size=2 * N))


def test_single_mode_coefficients():
    s = lagrangian_state(FourierPoly.from_modes({1: 1.0}), 0, 2)
    j = np.arange(4)
    np.testing.assert_allclose(s.coeffs, 0.5 * math.exp(-math.pi / 4) * np.exp(-1j * np.pi * j / 2), atol=1e-15)


def test_unit_density_gives_basis_state():
    for N in (16, 64):
        for k in (0, 3, N, 2 * N - 1):
            assert (lagrangian_state(TrigPoly(1.0), k, N) - basis_state(k, N)).norm() <= 1e-13


def test_carrier_range_checked():
    with pytest.raises(ValueError):
        lagrangian_state(TrigPoly(1.0), 8, 4)


def test_inner_product_examples():
    one = TrigPoly(1.0)
    assert inner_product_formula(one, one, 3, 3, 16) == pytest.approx(1.0, abs=1e-15)
    e1 = FourierPoly.from_modes({1: 1.0})
    assert inner_product_formula(e1, e1, 2, 2, 16) == pytest.approx(math.exp(-math.pi / 16), abs=1e-15)


def test_inner_product_formula_matches_direct():
    rng = np.random.default_rng(7)
    for N in (16, 64):
        for _ in range(50):
            f, g = random_fourier(rng, 5), random_fourier(rng, 5)
            k, ell = (int(x) for x in rng.integers(0, 2 * N, 2))
            direct = lagrangian_state(f, k, N).inner(lagrangian_state(g, ell, N))
            assert abs(inner_product_formula(f, g, k, ell, N) - direct) <= 1e-12


def test_inner_product_aliases_counted():
    # degree reaches N: the pairing wraps modulo 2N
    N = 4
    f = FourierPoly.from_modes({0: 1.0, 5: 0.7})
    g = FourierPoly.from_modes({-3: 1.0})
    direct = lagrangian_state(f, 0, N).inner(lagrangian_state(g, 0, N))
    assert abs(direct) > 1e-7  # zero without the wrapped pairing 5 = -3 + 2N
    assert inner_product_formula(f, g, 0, 0, N) == pytest.approx(direct, rel=1e-9)


def test_norm_and_overlap_inequalities():
    rng = np.random.default_rng(11)
    for N in (32, 128, 512):
        for _ in range(50):
            f, g = random_fourier(rng, 4), random_fourier(rng, 4)
            k = int(rng.integers(0, 2 * N))
            assert lagrangian_state(f, k, N).norm() <= f.l2() + 1e-14
            d, bound = overlap_defect(f, g, k, N)
            assert d <= bound + 1e-14


def test_free_operator_on_basis_states():
    N = 16
    for k in range(2 * N):
        psi = basis_state(k, N)
        out = apply_T(ProfilePair(), N, psi)
        assert (out - 2 * math.cos(k * math.pi / N) * psi).norm() <= 1e-13


def test_free_operator_is_sum_of_shifts():
    rng = np.random.default_rng(3)
    for N in (16, 64):
        for _ in range(50):
            s = _random_state(rng, N)
            lhs = apply_T(ProfilePair(), N, s)
            rhs = apply_shift(1, N, s) + apply_shift(-1, N, s)
            assert (lhs - rhs).norm() <= 1e-12


def test_shift_identity():
    rng = np.random.default_rng(5)
    for N in (16, 64):
        for _ in range(50):
            f = random_fourier(rng, 4)
            ell = int(rng.integers(0, 2 * N))
            for sign in (1, -1):
                lhs = apply_shift(sign, N, lagrangian_state(f, ell, N))
                rhs = lagrangian_state(symbol_shift(sign, ell, f, N), ell, N)
                assert (lhs - rhs).norm() <= 1e-12


def test_shifts_are_inverse_isometries():
    rng = np.random.default_rng(9)
    s = _random_state(rng, 20)
    assert (apply_shift(-1, 20, apply_shift(1, 20, s)) - s).norm() <= 1e-14
    assert apply_shift(1, 20, s).norm() == pytest.approx(s.norm(), rel=1e-14)


def test_operator_linear_and_selfadjoint(standard):
    rng = np.random.default_rng(2)
    pp = standard[2][1]
    N = 24
    u, v = _random_state(rng, N), _random_state(rng, N)
    lin = apply_T(pp, N, 2.0 * u + v) - (2.0 * apply_T(pp, N, u) + apply_T(pp, N, v))
    assert lin.norm() <= 1e-13
    assert abs(apply_T(pp, N, u).inner(v) - u.inner(apply_T(pp, N, v))) <= 1e-12
    T = T_matrix(pp, N)
    np.testing.assert_allclose(T, T.conj().T, atol=1e-15)


def test_symbol_decomposition(standard):
    rng = np.random.default_rng(4)
    for _, pp in standard:
        for N in (16, 64):
            for _ in range(20):
                f = random_fourier(rng, 3)
                ell = int(rng.integers(0, 2 * N))
                free = free_symbol(ell, f, N)
                assert (free - symbol_shift(1, ell, f, N) - symbol_shift(-1, ell, f, N)).l2() <= 1e-13
                a2 = frequency_double(pp.alpha).to_fourier()
                b2 = frequency_double(pp.beta).to_fourier()
                expect = free + coupling(N) * (b2 * f) + coupling(N) * (a2 * free)
                assert (symbol_apply(SymbolParams(ell, pp, N), f) - expect).l2() <= 1e-13


def test_zero_symbol_on_constant():
    N, ell = 32, 5
    out = symbol_apply(SymbolParams(ell, ProfilePair(), N), TrigPoly(1.0))
    assert out.coeff(0) == pytest.approx(2 * math.cos(ell * math.pi / N), abs=1e-15)


def test_prop35_bound_literal_constant(standard):
    rng = np.random.default_rng(8)
    for _, pp in standard:
        for N in (32, 64, 128, 256, 512):
            for _ in range(5):
                f = random_trig(rng, 3)
                ell = int(rng.integers(0, 2 * N))
                assert symbol_residual(pp, N, ell, f) <= symbol_bound(pp, N, f)
    assert symbol_residual(ProfilePair(), 64, 7, TrigPoly(0.0, (1.0,))) <= 1e-13


def test_lemma37_bound():
    rng = np.random.default_rng(12)
    assert potential_residual(TrigPoly(), TrigPoly(1.0), 3, 64) == 0.0
    assert potential_residual(TrigPoly(0.0, (1.0,)), TrigPoly(1.0), 0, 64) <= potential_bound(
        TrigPoly(0.0, (1.0,)), TrigPoly(1.0), 64)
    for N in (32, 128, 512):
        for _ in range(20):
            f, g = random_trig(rng, 3), random_trig(rng, 3)
            k = int(rng.integers(0, 2 * N))
            assert potential_residual(f, g, k, N) <= potential_bound(f, g, N)


def test_commutator_identity_and_norm():
    rng = np.random.default_rng(13)
    for N in (32, 128, 512):
        for _ in range(10):
            f, g = random_trig(rng, 3, constant=False), random_fourier(rng, 3)
            k = int(rng.integers(0, 2 * N))
            for sign in (1, -1):
                assert commutator_identity_residual(f, g, k, N, sign) <= 1e-12
                exact = commutator_norm(f, N, sign)
                assert exact <= c_norm(f.derivative(), 0) / N
                for _ in range(10):
                    s = _random_state(rng, N).normalized()
                    assert commutator_apply(f, N, sign, s).norm() <= exact * (1 + 1e-12)


def test_commutator_norm_is_exact():
    f = TrigPoly(0.0, (0.4,), (0.0, 0.3))
    N = 24
    M = np.column_stack([commutator_apply(f, N, 1, FockState(N, e)).coeffs for e in np.eye(2 * N)])
    assert commutator_norm(f, N, 1) == pytest.approx(np.linalg.norm(M, 2), rel=1e-12)


def test_free_quasimodes_exact():
    N = 64
    a, b, mu = bulk_quasimode(ProfilePair(), N, N // 2)
    assert quasimode_residual(ProfilePair(), N, a, mu) <= 1e-13
    state, mu = edge_quasimode(ProfilePair(), N, 0, -1)
    assert mu == -2.0 and quasimode_residual(ProfilePair(), N, state, mu) <= 1e-13


def test_bulk_range_enforced(cos_pair):
    with pytest.raises(ValueError):
        bulk_quasimode(cos_pair, 64, 1)


def test_edge_gram_bound(standard):
    for _, pp in standard:
        for N in (32, 64, 128, 256, 512):
            for side in (-1, 1):
                dev, bound = edge_gram_deviation(pp, N, side)
                assert dev <= bound


def test_certificate_examples():
    A = np.diag([1.0, 2.0, 3.0])
    c = quasimode_certificate(A, np.array([1.0, 0, 0]), 1.05)
    assert c.residual == pytest.approx(0.05, abs=1e-15) and c.verified and c.nearest == 1.0
    with pytest.raises(ValueError):
        quasimode_pair_certificate(A, np.array([1.0, 0, 0]), np.array([2.0, 0, 0]), 1.0)


def test_certificate_without_spectrum_is_unverified():
    c = quasimode_certificate(lambda v: 2 * v, np.ones(3), 1.0)
    assert c.verified is None and c.radius == pytest.approx(1.0)


def test_edge_certificates_capture(standard):
    for _, pp in standard:
        N = 128
        T = T_matrix(pp, N)
        for side in (-1, 1):
            for j in range(3):
                state, mu = edge_quasimode(pp, N, j, side)
                assert quasimode_certificate(T, state, mu).verified


def test_prop35_bound_uses_norm_constant(cos_pair):
    f = TrigPoly(0.0, (1.0,))
    assert symbol_bound(cos_pair, 10, f) == pytest.approx(norms(cos_pair).k_alpha_beta * c_norm(f, 2) / 1000)
