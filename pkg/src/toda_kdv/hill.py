"""Hill operators -d^2/dx^2 + q on [0, 1] with q of period 1/2.

Two independent routes to the periodic spectrum: a Fourier-Galerkin
discretization and the Floquet discriminant integrated with classical RK4.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg
import scipy.special

from .jacobi import PAIR_TOL, critical_points, pair_equal
from .profiles import HillPotential, NormBundle, TrigPoly, c_norm, sobolev_norm

FOUR_PI2 = 4.0 * np.pi ** 2


@dataclass(frozen=True, eq=False)
class HillSpectrum:
    lambdas: np.ndarray
    eigenfunctions: tuple[TrigPoly, ...]
    truncation: int
    potential: HillPotential

    @property
    def j_max(self) -> int:
        return (len(self.lambdas) - 1) // 2


def default_truncation(q: HillPotential, J_max: int) -> int:
    return max(136, 4 * q.q.max_harmonic, 2 * J_max + 8)


def _real_galerkin_matrix(q: HillPotential, K: int) -> np.ndarray:
    """H in the real basis (1, sqrt2 cos 2pi n x, sqrt2 sin 2pi n x)_{n<=K}."""
    F = q.q.to_fourier()
    n = np.arange(-K, K + 1)
    diff = np.subtract.outer(n, n)
    H = np.zeros((2 * K + 1, 2 * K + 1), dtype=complex)
    mask = np.abs(diff) <= F.K
    H[mask] = F.coeffs[F.K + diff[mask]]
    H[np.diag_indices_from(H)] += (2 * np.pi * n) ** 2
    U = np.zeros_like(H)
    U[K, 0] = 1.0
    r = 1.0 / np.sqrt(2.0)
    for m in range(1, K + 1):
        U[K + m, 2 * m - 1] = r
        U[K - m, 2 * m - 1] = r
        U[K + m, 2 * m] = -1j * r
        U[K - m, 2 * m] = 1j * r
    R = U.conj().T @ H @ U
    return 0.5 * (R.real + R.real.T)


def _fix_sign(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v) > np.abs(v).max() * (1 - 1e-9)))
    return v if v[k] > 0 else -v


def _to_trigpoly(v: np.ndarray) -> TrigPoly:
    s2 = np.sqrt(2.0)
    return TrigPoly(v[0], s2 * v[1::2], s2 * v[2::2])


@lru_cache(maxsize=32)
def galerkin_eigs(q: HillPotential, K: int | None = None, J_max: int = 64) -> HillSpectrum:
    """Lowest 2*J_max + 1 periodic eigenvalues on [0, 1] and real orthonormal eigenfunctions."""
    K = default_truncation(q, J_max) if K is None else K
    if K < 4 * q.q.max_harmonic or K < 2 * J_max + 8:
        raise ValueError("Galerkin truncation K too small for the potential or J_max")
    n_keep = 2 * J_max + 1
    w, V = scipy.linalg.eigh(_real_galerkin_matrix(q, K))
    w, V = w[:n_keep], V[:, :n_keep].copy()

    w2 = scipy.linalg.eigvalsh(_real_galerkin_matrix(q, 2 * K), subset_by_index=[0, n_keep - 1])
    moved = np.abs(w2 - w) > 1e-8 * (1.0 + np.abs(w))
    if np.any(moved):
        raise RuntimeError(f"Galerkin truncation not converged at K={K} (index {int(np.argmax(moved))})")

    cos_rows = np.zeros(2 * K + 1, dtype=bool)
    cos_rows[0] = True
    cos_rows[1::2] = True
    j = 0
    while j < n_keep:
        if j + 1 < n_keep and pair_equal(w[j], w[j + 1]):
            V2 = V[:, j:j + 2]
            P = V2[cos_rows]
            G = P.T @ P
            _, X = np.linalg.eigh(G)
            V2 = V2 @ X[:, ::-1]
            V[:, j] = _fix_sign(V2[:, 0])
            V[:, j + 1] = _fix_sign(V2[:, 1])
            j += 2
        else:
            V[:, j] = _fix_sign(V[:, j])
            j += 1
    funcs = tuple(_to_trigpoly(V[:, i]) for i in range(n_keep))
    return HillSpectrum(w, funcs, K, q)


@dataclass(frozen=True, eq=False)
class HillDiscriminantSample:
    lam: np.ndarray
    value: np.ndarray
    d1: np.ndarray
    d2: np.ndarray


def base_steps(lam) -> int:
    lam = np.asarray(lam)
    top = float(np.abs(lam).max(initial=0.0))
    return max(400, math.ceil(40.0 * (1.0 + math.sqrt(top))))


def _generator(c: np.ndarray) -> np.ndarray:
    """6x6 matrices of the system for (y, y', d_lam y, d_lam y', d2_lam y, d2_lam y'), c = q - lambda."""
    A = np.zeros(c.shape + (6, 6), dtype=complex)
    for b in (0, 2, 4):
        A[..., b, b + 1] = 1.0
        A[..., b + 1, b] = c
    A[..., 3, 0] = -1.0
    A[..., 5, 2] = -2.0
    return A


def _rk4_propagators(q_vals: np.ndarray, lam: np.ndarray, h: float) -> np.ndarray:
    """One classical RK4 step of the linear system written as a matrix, for every step and lambda."""
    A0 = _generator(q_vals[0:-1:2][:, None] - lam[None, :])
    Am = _generator(q_vals[1::2][:, None] - lam[None, :])
    A1 = _generator(q_vals[2::2][:, None] - lam[None, :])
    I = np.broadcast_to(np.eye(6), A0.shape)
    K1 = A0
    K2 = Am @ (I + 0.5 * h * K1)
    K3 = Am @ (I + 0.5 * h * K2)
    K4 = A1 @ (I + h * K3)
    return I + (h / 6.0) * (K1 + 2.0 * K2 + 2.0 * K3 + K4)


def _ordered_product(P: np.ndarray) -> np.ndarray:
    """P[n-1] ... P[1] P[0] by pairwise reduction along the first axis."""
    while P.shape[0] > 1:
        odd = P[-1:] if P.shape[0] % 2 else None
        P = P[1::2][: P.shape[0] // 2] @ P[0::2][: P.shape[0] // 2]
        if odd is not None:
            P = np.concatenate([P, odd])
    return P[0]


def _integrate(q: HillPotential, lam: np.ndarray, n: int):
    """RK4 on [0, 1/2] for both fundamental solutions and two lambda-derivatives."""
    h = 0.5 / n
    qv = np.asarray(q(np.arange(2 * n + 1) * (0.5 * h)), dtype=float)
    chunk = max(1, int(4e6 // (36 * n)))  # bound the propagator stack to ~64 MB
    out = np.empty((3, lam.size), dtype=complex)
    for s in range(0, lam.size, chunk):
        T = _ordered_product(_rk4_propagators(qv, lam[s:s + chunk], h))
        out[0, s:s + chunk] = T[:, 0, 0] + T[:, 1, 1]
        out[1, s:s + chunk] = T[:, 2, 0] + T[:, 3, 1]
        out[2, s:s + chunk] = T[:, 4, 0] + T[:, 5, 1]
    return out[0], out[1], out[2]


def hill_discriminant(q: HillPotential, lam, steps: int | None = None) -> HillDiscriminantSample:
    """Delta(lambda) = y1(1/2) + y2'(1/2) with its first two lambda-derivatives.

    Without ``steps`` the step count starts from the base rule and is doubled until
    halving the step changes Delta by at most 1e-8 (1 + |Delta|).
    """
    lam = np.asarray(lam, dtype=complex)
    shape = lam.shape
    flat = lam.reshape(-1)
    if steps is not None:
        out = _integrate(q, flat, steps)
    else:
        n = base_steps(flat)
        coarse = _integrate(q, flat, n)
        for _ in range(6):
            fine = _integrate(q, flat, 2 * n)
            if np.all(np.abs(fine[0] - coarse[0]) <= 1e-8 * (1.0 + np.abs(fine[0]))):
                break
            n, coarse = 2 * n, fine
        else:
            raise RuntimeError("hill_discriminant: step halving did not converge")
        out = fine
    return HillDiscriminantSample(lam, *(v.reshape(shape) for v in out))


def _tail_log(lam: np.ndarray, tail: int) -> np.ndarray:
    """log prod_{n>tail} (1 - lam/(4 pi^2 n^2))^2 via Hurwitz zeta sums."""
    x = lam / FOUR_PI2
    out = np.zeros_like(x, dtype=complex)
    for k in range(1, 60):
        term = (x ** k / k) * scipy.special.zeta(2 * k, tail + 1)
        out -= term
        if np.all(np.abs(term) < 1e-18):
            break
    return 2.0 * out


def hill_log_product(spectrum: HillSpectrum, lam, tail: int) -> np.ndarray:
    """log of (lambda_0 - lam) prod_n (lambda_2n - lam)(lambda_2n-1 - lam)/(16 pi^4 n^4), free tail beyond n = tail."""
    if 2 * tail > len(spectrum.lambdas) - 1:
        raise ValueError("spectrum too short for the requested tail")
    lam = np.asarray(lam, dtype=complex)
    ev = spectrum.lambdas[: 2 * tail + 1].astype(complex)
    n = np.arange(1, tail + 1)
    with np.errstate(divide="ignore"):
        logs = np.log(ev[:, None] - lam.reshape(1, -1)).sum(axis=0).reshape(lam.shape)
    norm = np.sum(np.log(16.0 * np.pi ** 4 * n.astype(float) ** 4))
    return logs - norm + _tail_log(lam, tail)


def product_representation_check(q: HillPotential, spectrum: HillSpectrum, lam, tail: int = 32):
    """|product - (Delta^2 - 4)| / (1 + |Delta^2 - 4|)."""
    lam = np.asarray(lam, dtype=complex)
    D = hill_discriminant(q, lam).value
    lhs = D * D - 4.0
    rhs = np.exp(hill_log_product(spectrum, lam, tail))
    return np.abs(rhs - lhs) / (1.0 + np.abs(lhs))


def derivative_zeros_hill(q: HillPotential, spectrum: HillSpectrum, n_max: int | None = None) -> np.ndarray:
    """Zeros of d/dlambda Delta in each gap [lambda_{2n-1}, lambda_{2n}], n = 1..n_max."""
    n_max = spectrum.j_max if n_max is None else n_max
    n = np.arange(1, n_max + 1)
    lo = spectrum.lambdas[2 * n - 1]
    hi = spectrum.lambdas[2 * n]
    steps = 2 * base_steps(hi)
    hill_discriminant(q, hi)  # step-halving guard at the largest bracket end

    def f(x):
        d = hill_discriminant(q, x, steps=steps)
        return d.d1.real, d.d2.real

    return critical_points(f, lo, hi, "derivative_zeros_hill")


def hill_discriminant_extrapolated(q: HillPotential, lam, steps: int | None = None) -> HillDiscriminantSample:
    """Richardson combination (16 D_{2n} - D_n)/15 of two RK4 runs; error O(h^6)."""
    lam = np.asarray(lam, dtype=complex)
    flat = lam.reshape(-1)
    n = steps or 2 * base_steps(flat)
    a = _integrate(q, flat, n)
    b = _integrate(q, flat, 2 * n)
    out = [(16.0 * y - x) / 15.0 for x, y in zip(a, b)]
    return HillDiscriminantSample(lam, *(v.reshape(lam.shape) for v in out))


def discriminant_roots(q: HillPotential, spectrum: HillSpectrum, n_max: int) -> np.ndarray:
    """Periodic eigenvalues lambda_0..lambda_{2 n_max} as roots of Delta = +/-2.

    Galerkin values only place the brackets: each gap root pair is split at the
    critical point of Delta, and the outer ends sit mid-band where |Delta| < 2.
    A pair whose critical value reaches 2 within 1e-12 is a closed gap (double root).
    """
    ev = spectrum.lambdas
    if 2 * n_max + 1 >= len(ev):
        raise ValueError("spectrum too short for the requested gaps")
    mid = 0.5 * (ev[:-1] + ev[1:])
    steps = 2 * base_steps(mid[2 * n_max] + 1.0)

    def g_of(s):
        def f(x):
            d = hill_discriminant_extrapolated(q, x, steps)
            return (s * d.value - 2.0).real, (s * d.d1).real
        return f

    def dg(x):
        d = hill_discriminant_extrapolated(q, x, steps)
        return d.d1.real, d.d2.real

    out = np.empty(2 * n_max + 1)
    lo0 = ev[0] - 1.0
    while g_of(1.0)(np.array([lo0]))[0][0] <= 0:
        lo0 -= 2.0 * (ev[0] - lo0)
    out[0] = critical_points(g_of(1.0), np.array([lo0]), np.array([mid[0]]), "discriminant_roots")[0]
    n = np.arange(1, n_max + 1)
    crit = critical_points(dg, ev[2 * n - 1], ev[2 * n], "discriminant_roots")
    for k, c in zip(n, crit):
        f = g_of((-1.0) ** k)
        gc = f(np.array([c]))[0][0]
        if abs(gc) <= 1e-12:
            out[2 * k - 1] = out[2 * k] = c
            continue
        out[2 * k - 1] = critical_points(f, np.array([mid[2 * k - 2]]), np.array([c]), "discriminant_roots")[0]
        out[2 * k] = critical_points(f, np.array([c]), np.array([mid[2 * k]]), "discriminant_roots")[0]
    return out


@dataclass(frozen=True)
class SpectralBox:
    m: int
    f_of_m: int
    rect: tuple[float, float, float, float]  # (re_lo, re_hi, im_lo, im_hi)
    variant: int
    n0: int
    gap_condition_plain: bool


def f_scale(N: float, eta: float) -> float:
    return float(N) ** eta


def m_of(N: int, eta: float) -> int:
    return int(math.floor(f_scale(N, eta) + 1e-12))


def counting_box(spectrum: HillSpectrum, N: int, eta: float, variant: int = 2) -> SpectralBox:
    M = m_of(N, eta)
    FM = m_of(M, eta)
    lam = spectrum.lambdas
    if 2 * FM >= len(lam):
        raise ValueError("spectrum too short for the counting box")
    margin = {1: 1.0, 2: 2.0}[variant]
    rect = (float(lam[0] - margin), float(lam[2 * FM] + margin), -margin, margin)
    ks = np.arange((len(lam) - 1) // 2)
    ok = lam[2 * ks + 1] - lam[2 * ks] >= 6.0
    bad = np.flatnonzero(~ok)
    k0 = int(bad[-1]) + 1 if bad.size else 0
    n0 = 1
    while m_of(m_of(n0, eta), eta) < k0:
        n0 += 1
    plain = bool(np.all(ok[: FM + 1]))
    return SpectralBox(M, FM, rect, variant, n0, plain)


def eigenfunction_bound_check(spectrum: HillSpectrum, norms: NormBundle, N: int, eta: float,
                              strict: bool = False) -> dict:
    """Evaluate the eigenfunction and eigenvalue bounds for j <= 2M.

    The bounds are evaluated even when the counting precondition on M fails
    (it is only sufficient); ``strict=True`` skips in that case instead.
    """
    q = spectrum.potential
    M = m_of(N, eta)
    F = f_scale(N, eta)
    K = norms.k_alpha_beta
    q0 = sobolev_norm(q.q, 0)
    qc0 = c_norm(q.q, 0)
    pre = M > 2.0 * (1.0 + q0) * math.exp(q0)
    report = {"N": N, "M": M, "precondition": pre, "skipped": False, "rows": [], "pass": True}
    if strict and not pre:
        report["skipped"] = True
        report["notice"] = "counting precondition on M unmet"
        return report
    if 2 * M >= len(spectrum.lambdas):
        raise ValueError("spectrum too short for j <= 2M")
    B = 2.0 * K + 8.0 * np.pi ** 2 * F ** 2
    for j in range(2 * M + 1):
        g = spectrum.eigenfunctions[j].to_fourier()
        d = [g.derivative(k).l2() for k in range(5)]
        gc0 = g.sup()
        g1c0 = g.derivative(1).sup()
        g2c0 = g.derivative(2).sup()
        lam = float(spectrum.lambdas[j])
        checks = {
            "d1": d[1] <= math.sqrt(B),
            "d2": d[2] <= B,
            "d3": d[3] <= B ** 1.5 + 2 * K,
            "d4": d[4] <= 3 * B ** 2 + 2 * K,
            "eigenvalue": abs(lam) <= 4 * np.pi ** 2 * (M + 0.5) ** 2,
            "sup_d2": g2c0 <= (q0 + 8 * np.pi ** 2 * F ** 2) * gc0,
            "sup_d1": g1c0 <= 2 * (qc0 + 8 * np.pi ** 2 * F ** 2),
        }
        row = {"j": j, "lambda": lam, "l2_d1": d[1], "l2_d2": d[2], "l2_d3": d[3], "l2_d4": d[4],
               "sup": gc0, "sup_d2": g2c0, **{f"ok_{k}": v for k, v in checks.items()}}
        report["rows"].append(row)
        report["pass"] &= all(checks.values())
    return report
