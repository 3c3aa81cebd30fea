from __future__ import annotations

import math

import numpy as np
import pytest
import scipy.integrate

from toda_kdv.profiles import (ProfilePair, TrigPoly, c_norm, eval_trigpoly, frequency_double, hill_potentials,
                               norms, sample_flaschka)


def test_eval_examples():
    c = TrigPoly(0.0, (1.0,))
    assert eval_trigpoly(c, 0.0) == pytest.approx(1.0, abs=1e-15)
    assert eval_trigpoly(c, 0.25) == pytest.approx(0.0, abs=1e-15)
    assert eval_trigpoly(TrigPoly(0.0, (), (0.0, 0.3)), 0.125) == pytest.approx(0.3, abs=1e-15)


def test_mean_equals_constant():
    p = TrigPoly(0.7, (0.2, -1.1), (0.4,))
    mean, _ = scipy.integrate.quad(lambda x: eval_trigpoly(p, x), 0.0, 1.0, epsabs=1e-14)
    assert mean == pytest.approx(0.7, abs=1e-12)


def test_frequency_double_examples():
    assert frequency_double(TrigPoly(0.0, (1.0,))).cos_coeffs == (0.0, 1.0)
    assert frequency_double(TrigPoly(2.5)).constant == 2.5
    d = frequency_double(TrigPoly(0.0, (0.0, 1.0), (1.0,)))
    assert d.sin_coeffs == (0.0, 1.0) and d.cos_coeffs == (0.0, 0.0, 0.0, 1.0)


def test_flaschka_examples():
    m = sample_flaschka(ProfilePair(), 8)
    assert np.all(m.b == 0) and np.all(m.a == 1)
    m = sample_flaschka(ProfilePair(TrigPoly(0.0, (1.0,)), TrigPoly()), 2)
    np.testing.assert_allclose(m.a, [1 - 1 / 16, 1 + 1 / 16], atol=1e-15)
    np.testing.assert_allclose(m.b, [0, 0], atol=1e-15)
    m = sample_flaschka(ProfilePair(TrigPoly(), TrigPoly(0.0, (), (1.0,))), 4)
    np.testing.assert_allclose(m.b, [1 / 64, 0, -1 / 64, 0], atol=1e-17)


def test_nonzero_mean_rejected():
    with pytest.raises(ValueError):
        ProfilePair(TrigPoly(0.1), TrigPoly())


def test_potentials():
    qp, qm = hill_potentials(ProfilePair())
    assert qp.is_zero() and qm.is_zero()
    qp, qm = hill_potentials(ProfilePair(TrigPoly(0.0, (1.0,)), TrigPoly()))
    for q in (qp, qm):
        assert q.q.cos_coeffs == (0.0, -2.0) and q.q.sin_coeffs == ()
    qp, qm = hill_potentials(ProfilePair(TrigPoly(), TrigPoly(0.0, (), (1.0,))))
    assert qm.q.sin_coeffs == (0.0, 1.0) and qp.q.sin_coeffs == (0.0, -1.0)


def test_norm_examples():
    assert norms(ProfilePair()).k_alpha_beta == 1.0
    nb = norms(ProfilePair(TrigPoly(0.0, (1.0,)), TrigPoly()))
    assert nb.sobolev[0] == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    # sup of |cos| + 2 pi |sin| + 4 pi^2 |cos| is sqrt((1 + 4 pi^2)^2 + 4 pi^2), not attained at x = 0
    assert nb.c2 == pytest.approx(math.hypot(1 + 4 * math.pi ** 2, 2 * math.pi), rel=1e-6)
    assert nb.k_alpha_beta == pytest.approx(nb.c2 + 1.0, abs=0)
    assert nb.k_alpha_beta == pytest.approx(41.9631555567, abs=1e-6)


def test_c_norm_orders_nested():
    p = TrigPoly(0.0, (0.3, 0.1), (0.2,))
    assert c_norm(p, 0) <= c_norm(p, 1) <= c_norm(p, 2)


def test_serialization_roundtrip():
    pp = ProfilePair(TrigPoly(0.0, (1.0,), (0.0, 0.5)), TrigPoly(0.0, (), (0.3,)))
    back = ProfilePair.from_dict(pp.to_dict())
    assert back.to_dict() == pp.to_dict()
