"""Periodic Jacobi matrices: spectra, the Toda discriminant and Casimirs."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .profiles import PeriodicJacobiMatrix, ProfilePair, sample_flaschka

PAIR_TOL = 1e-8


def pair_equal(x: float, y: float, tol: float = PAIR_TOL) -> bool:
    return abs(x - y) <= tol * (1.0 + abs(x))


def build_L(m: PeriodicJacobiMatrix) -> np.ndarray:
    """Dense N x N periodic Jacobi matrix; for N = 2 the off-diagonal is a_1 + a_2."""
    N = m.n_sites
    L = np.diag(m.b)
    if N == 2:
        L[0, 1] = L[1, 0] = m.a[0] + m.a[1]
        return L
    idx = np.arange(N - 1)
    L[idx, idx + 1] = m.a[:-1]
    L[idx + 1, idx] = m.a[:-1]
    L[0, N - 1] = L[N - 1, 0] = m.a[-1]
    return L


def build_Q(pp: ProfilePair, N: int) -> PeriodicJacobiMatrix:
    return sample_flaschka(pp, N).double()


@dataclass(frozen=True, eq=False)
class SpectrumN:
    values: np.ndarray
    n_sites: int


def eig_spectrum(m: PeriodicJacobiMatrix) -> SpectrumN:
    """All 2N eigenvalues of Q, ascending.  Undoubled input is doubled first."""
    Q = m if m.doubled else m.double()
    vals = scipy.linalg.eigvalsh(build_L(Q), check_finite=True)
    return SpectrumN(np.sort(vals), Q.n_sites // 2)


@lru_cache(maxsize=64)
def spectrum_of(pp: ProfilePair, N: int) -> SpectrumN:
    """Cached spectrum of Q for a profile pair."""
    return eig_spectrum(build_Q(pp, N))


def floquet_indices(N: int) -> np.ndarray:
    """Indices of the eigenvalues of Q that belong to L (counted from the top in 4-blocks)."""
    i = np.arange(2 * N)
    return i[np.isin((2 * N - 1 - i) % 4, (0, 3))]


def floquet_subset(s: SpectrumN) -> np.ndarray:
    return s.values[floquet_indices(s.n_sites)]


@dataclass(frozen=True, eq=False)
class DiscriminantSample:
    mu: np.ndarray
    value: np.ndarray
    d1: np.ndarray
    d2: np.ndarray


def discriminant(m: PeriodicJacobiMatrix, mu) -> DiscriminantSample:
    """Delta_N(mu) = y1(N) + y2(N+1) with two mu-derivatives, vectorized over mu.

    The recurrence a_{k-1} y(k-1) + b_k y(k) + a_k y(k+1) = mu y(k) is run forward
    together with its first and second mu-derivatives.
    """
    N = m.n_sites
    if N < 2:
        raise ValueError("N must be at least 2")
    mu = np.asarray(mu, dtype=complex)
    shape = mu.shape
    mu = mu.reshape(1, -1)
    a, b = m.a, m.b
    # rows: fundamental solutions 1 and 2
    y_prev = np.array([[1.0], [0.0]], dtype=complex) * np.ones_like(mu)
    y_cur = np.array([[0.0], [1.0]], dtype=complex) * np.ones_like(mu)
    d_prev = np.zeros_like(y_prev)
    d_cur = np.zeros_like(y_prev)
    e_prev = np.zeros_like(y_prev)
    e_cur = np.zeros_like(y_prev)
    y1_N = None
    for k in range(1, N + 1):
        a_k, a_km1, s = a[k - 1], a[k - 2], mu - b[k - 1]
        y_next = (s * y_cur - a_km1 * y_prev) / a_k
        d_next = (s * d_cur + y_cur - a_km1 * d_prev) / a_k
        e_next = (s * e_cur + 2.0 * d_cur - a_km1 * e_prev) / a_k
        y_prev, y_cur = y_cur, y_next
        d_prev, d_cur = d_cur, d_next
        e_prev, e_cur = e_cur, e_next
        if k == N - 1:
            y1_N = (y_cur[0].copy(), d_cur[0].copy(), e_cur[0].copy())
    value = y1_N[0] + y_cur[1]
    d1 = y1_N[1] + d_cur[1]
    d2 = y1_N[2] + e_cur[1]
    return DiscriminantSample(mu.reshape(shape), value.reshape(shape), d1.reshape(shape), d2.reshape(shape))


def casimirs(m: PeriodicJacobiMatrix) -> tuple[float, float]:
    """(q_N, p_N) = (prod a_n, sum b_n) over one period."""
    q = math.exp(math.fsum(np.log1p(m.da)))
    p = math.fsum(m.b)
    return q, p


def casimir_q_minus_one(m: PeriodicJacobiMatrix) -> float:
    """q_N - 1 computed without cancellation."""
    return math.expm1(math.fsum(np.log1p(m.da)))


def log_product(values: np.ndarray, mu) -> np.ndarray:
    """sum_j log(values_j - mu) (complex; exp gives the product, -inf marks a zero factor)."""
    mu = np.asarray(mu, dtype=complex)
    diff = np.subtract.outer(mu, values.astype(complex))
    with np.errstate(divide="ignore"):
        return np.log(diff).sum(axis=-1)


def char_product_check(m: PeriodicJacobiMatrix, s: SpectrumN, mu) -> np.ndarray:
    """|Delta^2 - 4 - q^-2 prod(lambda_j - mu)| / (1 + |Delta^2|)."""
    mu = np.asarray(mu, dtype=complex)
    base = m if not m.doubled else PeriodicJacobiMatrix(m.b[: s.n_sites], m.a[: s.n_sites], m.da[: s.n_sites])
    D = discriminant(base, mu).value
    logq = math.fsum(np.log1p(base.da))
    lp = log_product(s.values, mu) - 2.0 * logq
    # compare on the scale 1 + |Delta|^2 without ever squaring Delta
    with np.errstate(divide="ignore"):
        scale = np.logaddexp(0.0, 2.0 * np.log(np.abs(D)))
    h = np.exp(-0.5 * scale)
    lhs_scaled = (D * h) ** 2 - 4.0 * h * h
    with np.errstate(over="ignore", invalid="ignore"):
        rhs_scaled = np.where(np.isneginf(lp.real), 0.0, np.exp(lp - scale))
    return np.abs(lhs_scaled - rhs_scaled)


def _bracketed_newton(f, lo: np.ndarray, hi: np.ndarray, tol: np.ndarray, max_iter: int = 200):
    """Vectorized safeguarded Newton/bisection for a sign change of f on [lo, hi].

    ``f(x)`` returns (value, derivative) arrays.
    """
    flo, _ = f(lo)
    x = 0.5 * (lo + hi)
    lo, hi = lo.copy(), hi.copy()
    for _ in range(max_iter):
        fx, dfx = f(x)
        same = np.sign(fx) == np.sign(flo)
        lo = np.where(same, x, lo)
        flo = np.where(same, fx, flo)
        hi = np.where(same, hi, x)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = x - fx / dfx
        ok = np.isfinite(newton) & (newton >= lo) & (newton <= hi)
        x_new = np.where(fx == 0, x, np.where(ok, newton, 0.5 * (lo + hi)))
        step = np.abs(x_new - x)
        x = x_new
        if np.all((step <= tol) | (hi - lo <= tol) | (fx == 0)):
            break
    return x


def critical_points(d1_fn, lo: np.ndarray, hi: np.ndarray, what: str) -> np.ndarray:
    """Zeros of a derivative inside gap brackets [lo, hi] (degenerate brackets return the midpoint)."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    out = 0.5 * (lo + hi)
    if lo.size == 0:
        return out
    flo, _ = d1_fn(lo)
    fhi, _ = d1_fn(hi)
    change = np.sign(flo) * np.sign(fhi) < 0
    degenerate = hi - lo <= PAIR_TOL * (1.0 + np.abs(lo))
    bad = ~change & ~degenerate
    if np.any(bad):
        k = int(np.flatnonzero(bad)[0])
        raise RuntimeError(f"{what}: no sign change of the derivative in bracket "
                           f"[{lo[k]!r}, {hi[k]!r}] (index {k})")
    if np.any(change):
        tol = 1e-12 * (1.0 + np.abs(lo[change]))
        out[change] = _bracketed_newton(d1_fn, lo[change], hi[change], tol)
    return out


def derivative_zeros(m: PeriodicJacobiMatrix, s: SpectrumN, indices=None) -> np.ndarray:
    """Zeros of d/dmu Delta_N in [lambda_{2n-1}, lambda_{2n}] for n in ``indices`` (default 1..N-1)."""
    N = s.n_sites
    n = np.arange(1, N) if indices is None else np.asarray(indices, dtype=int)
    if np.any((n < 1) | (n > N - 1)):
        raise ValueError("gap index out of range")
    lo = s.values[2 * n - 1]
    hi = s.values[2 * n]

    def f(x):
        d = discriminant(m, x)
        return d.d1.real, d.d2.real

    return critical_points(f, lo, hi, "derivative_zeros")
