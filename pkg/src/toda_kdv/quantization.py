"""Theta-coordinate Hilbert space of dimension 2N: Lagrangian states and quasimodes.

A state is its coefficient vector over the orthonormal theta basis
(theta_0, ..., theta_{2N-1}).  The Jacobi operator T acts through Q after the
reindexing row r <-> theta index 2N-1-r.  Inner products are linear in the
first slot: <u, v> = sum_j u_j conj(v_j).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
import scipy.linalg

from .hill import HillSpectrum, galerkin_eigs, m_of
from .jacobi import build_Q
from .profiles import (FourierPoly, ProfilePair, TrigPoly, as_fourier, c_norm, coupling, eval_trigpoly,
                       frequency_double, hill_potentials, norms)


@dataclass(frozen=True, eq=False)
class FockState:
    n_param: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (2 * self.n_param,):
            raise ValueError("coefficient vector must have length 2N")
        object.__setattr__(self, "coeffs", c)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def inner(self, other: "FockState") -> complex:
        return complex(np.vdot(other.coeffs, self.coeffs))

    def __add__(self, other: "FockState") -> "FockState":
        return FockState(self.n_param, self.coeffs + other.coeffs)

    def __sub__(self, other: "FockState") -> "FockState":
        return FockState(self.n_param, self.coeffs - other.coeffs)

    def __mul__(self, s) -> "FockState":
        return FockState(self.n_param, complex(s) * self.coeffs)

    __rmul__ = __mul__

    def normalized(self) -> "FockState":
        return FockState(self.n_param, self.coeffs / self.norm())


def heat_weights(modes: np.ndarray, N: int) -> np.ndarray:
    return np.exp(-np.pi * modes.astype(float) ** 2 / (2.0 * N))


def lagrangian_state(f, k: int, N: int) -> FockState:
    """c_j = (2N)^{-1/2} e^{-i pi k j/N} sum_m f_m e^{-pi m^2/2N} e^{-i pi m j/N}."""
    if not 0 <= k <= 2 * N - 1:
        raise ValueError("carrier frequency k must lie in 0..2N-1")
    F = as_fourier(f)
    bins = np.zeros(2 * N, dtype=complex)
    np.add.at(bins, (F.modes + k) % (2 * N), F.coeffs * heat_weights(F.modes, N))
    return FockState(N, np.fft.fft(bins) / math.sqrt(2 * N))


def basis_state(k: int, N: int) -> FockState:
    """psi^{N,k}: coefficients (2N)^{-1/2} e^{-i pi k j/N}."""
    j = np.arange(2 * N)
    return FockState(N, np.exp(-1j * np.pi * ((k * j) % (2 * N)) / N) / math.sqrt(2 * N))


def inner_product_formula(f, g, k: int, ell: int, N: int) -> complex:
    """<psi_f^k, psi_g^ell> as a sum over Fourier modes.

    The pairing p = n + k - ell is taken modulo 2N; the t = 0 term is the
    single-sum formula and the others are the aliases present when the
    degrees of f and g reach N - |k - ell|.
    """
    F, G = as_fourier(f), as_fourier(g)
    total = 0j
    t_max = (F.K + G.K + abs(k - ell)) // (2 * N) + 1
    for n in F.modes:
        fn = F.coeff(int(n))
        if fn == 0:
            continue
        for t in range(-t_max, t_max + 1):
            p = int(n) + k - ell + 2 * N * t
            gp = G.coeff(p)
            if gp != 0:
                total += fn * np.conj(gp) * math.exp(-math.pi * (n * n + p * p) / (2.0 * N))
    return complex(total)


@lru_cache(maxsize=128)
def _q_data(pp: ProfilePair, N: int) -> tuple[np.ndarray, np.ndarray]:
    Q = build_Q(pp, N)
    return Q.b, Q.a


def _apply_jacobi(b: np.ndarray, a: np.ndarray, c: np.ndarray) -> np.ndarray:
    v = c[::-1]
    w = b * v + a * np.roll(v, -1) + np.roll(a, 1) * np.roll(v, 1)
    return w[::-1]


def apply_T(pp: ProfilePair, N: int, state: FockState) -> FockState:
    b, a = _q_data(pp, N)
    return FockState(N, _apply_jacobi(b, a, state.coeffs))


def apply_potential_difference(f: TrigPoly, N: int, state: FockState) -> FockState:
    """(T^{0,f} - T^{0,0}) psi: the diagonal eps f(r/N), r = 1..2N, in theta coordinates."""
    r = np.arange(1, 2 * N + 1)
    diag = coupling(N) * np.asarray(eval_trigpoly(f, r / N), dtype=float)
    return FockState(N, (diag * state.coeffs[::-1])[::-1])


def T_matrix(pp: ProfilePair, N: int) -> np.ndarray:
    """Dense matrix of T in theta coordinates (for certification against spectra)."""
    b, a = _q_data(pp, N)
    I = np.eye(2 * N)
    return np.column_stack([_apply_jacobi(b, a, I[:, i]) for i in range(2 * N)])


def apply_shift(sign: int, N: int, state: FockState) -> FockState:
    """T^+ (sign=+1) or T^- (sign=-1): the cyclic shift Q^{+/-} in theta coordinates."""
    v = state.coeffs[::-1]
    w = np.roll(v, -1) if sign > 0 else np.roll(v, 1)
    return FockState(N, w[::-1])


def symbol_shift(sign: int, ell: int, f, N: int) -> FourierPoly:
    """D^{+/-}_ell: mode m multiplied by exp(+/- i pi (ell + m)/N)."""
    return as_fourier(f).multiplier(lambda m: np.exp(sign * 1j * np.pi * (ell + m) / N))


def free_symbol(ell: int, f, N: int) -> FourierPoly:
    """D^{0,0}_ell: mode m multiplied by 2 cos(pi (ell + m)/N)."""
    return as_fourier(f).multiplier(lambda m: 2.0 * np.cos(np.pi * (ell + m) / N))


@dataclass(frozen=True)
class SymbolParams:
    ell: int
    pp: ProfilePair
    N: int


def symbol_apply(sp: SymbolParams, f) -> FourierPoly:
    """D^{alpha,beta}_ell f = C f + (beta_2 f + alpha_2 C f)/(4N^2) with C = D^{0,0}_ell."""
    F = as_fourier(f)
    Cf = free_symbol(sp.ell, F, sp.N)
    a2 = frequency_double(sp.pp.alpha).to_fourier()
    b2 = frequency_double(sp.pp.beta).to_fourier()
    return Cf + coupling(sp.N) * (b2 * F + a2 * Cf)


def symbol_residual(pp: ProfilePair, N: int, ell: int, f) -> float:
    lhs = apply_T(pp, N, lagrangian_state(f, ell, N))
    rhs = lagrangian_state(symbol_apply(SymbolParams(ell, pp, N), f), ell, N)
    return (lhs - rhs).norm()


def symbol_bound(pp: ProfilePair, N: int, f) -> float:
    return norms(pp).k_alpha_beta * c_norm(f, 2) / N ** 3


def potential_residual(f: TrigPoly, g, k: int, N: int) -> float:
    psi = lagrangian_state(g, k, N)
    lhs = apply_potential_difference(f, N, psi)
    rhs = coupling(N) * lagrangian_state(as_fourier(g) * frequency_double(f).to_fourier(), k, N)
    return (lhs - rhs).norm()


def potential_bound(f: TrigPoly, g, N: int) -> float:
    G = as_fourier(g)
    f2 = frequency_double(f).to_fourier()
    sup_prod = (G * f2).derivative(2).sup()
    return (sup_prod + c_norm(f, 0) * G.derivative(2).sup()) / (32.0 * np.pi * N ** 3)


def commutator_apply(f: TrigPoly, N: int, sign: int, state: FockState) -> FockState:
    """[T^{0,f} - T^{0,0}, T^{+/-}] psi."""
    V = lambda s: apply_potential_difference(f, N, s)
    S = lambda s: apply_shift(sign, N, s)
    return V(S(state)) - S(V(state))


def commutator_norm(f: TrigPoly, N: int, sign: int) -> float:
    """Exact operator norm: the commutator is a diagonal times a permutation fixing the all-ones vector."""
    ones = FockState(N, np.ones(2 * N))
    return float(np.abs(commutator_apply(f, N, sign, ones).coeffs).max())


def commutator_identity_residual(f: TrigPoly, g, k: int, N: int, sign: int) -> float:
    """Coefficient-norm defect of [D^{+/-}_k, M_{f_2}] g = (f_2(x +/- 1/2N) - f_2(x)) D^{+/-}_k g."""
    G = as_fourier(g)
    f2 = frequency_double(f).to_fourier()
    lhs = symbol_shift(sign, k, f2 * G, N) - f2 * symbol_shift(sign, k, G, N)
    rhs = (f2.translate(sign / (2.0 * N)) - f2) * symbol_shift(sign, k, G, N)
    return (lhs - rhs).l2()


def bulk_quasimode(pp: ProfilePair, N: int, ell: int, eta: float = 0.25):
    """First-order corrected quasimode pair near -2 cos(ell pi/N) (states are not renormalized)."""
    M = m_of(N, eta)
    if not M < ell < N - M:
        raise ValueError(f"ell={ell} outside the bulk range ({M}, {N - M})")
    c = math.cos(ell * math.pi / N)
    gamma = pp.beta.to_fourier().coeff(ell) - 2.0 * c * pp.alpha.to_fourier().coeff(ell)
    phase = np.conj(gamma) / abs(gamma) if abs(gamma) > 0 else 1.0
    tp, tm = basis_state(N + ell, N), basis_state(N - ell, N)
    zero = ProfilePair()
    n = np.arange(2 * N)
    denom = 2.0 * c + 2.0 * np.cos(n * np.pi / N)
    skip = (n == (N + ell) % (2 * N)) | (n == (N - ell) % (2 * N))
    out = []
    for s in (1.0, -1.0):
        psi0 = (1.0 / math.sqrt(2.0)) * (tp + (s * phase) * tm)
        w = (apply_T(pp, N, psi0) - apply_T(zero, N, psi0)).coeffs
        proj = np.fft.ifft(w) * math.sqrt(2 * N)  # <w, psi^n> for each n
        d = np.where(skip, 0.0, -proj / np.where(skip, 1.0, denom))
        phi = np.fft.fft(d) / math.sqrt(2 * N)
        out.append(FockState(N, psi0.coeffs + phi))
    return out[0], out[1], -2.0 * c


def edge_quasimode(pp: ProfilePair, N: int, j: int, side: int, eta: float = 0.25,
                   spectrum: HillSpectrum | None = None):
    """Left edge (side=-1): psi^{N,N}_{g_j^-}, mu = -2 + lambda_j^-/4N^2.
    Right edge (side=+1): psi^{N,0}_{g_j^+}, mu = 2 - lambda_j^+/4N^2."""
    if j > 2 * m_of(N, eta):
        raise ValueError("edge index j exceeds 2M")
    q_plus, q_minus = hill_potentials(pp)
    hs = spectrum or galerkin_eigs(q_minus if side < 0 else q_plus)
    g = hs.eigenfunctions[j]
    lam = float(hs.lambdas[j])
    if side < 0:
        return lagrangian_state(g, N, N), -2.0 + lam * coupling(N)
    return lagrangian_state(g, 0, N), 2.0 - lam * coupling(N)


def quasimode_residual(pp: ProfilePair, N: int, state: FockState, mu: float) -> float:
    """||(T - mu) psi|| / ||psi||."""
    r = apply_T(pp, N, state) - mu * state
    return r.norm() / state.norm()


@dataclass(frozen=True)
class QuasimodeCertificate:
    mu: float
    residual: float
    gram_offdiag: float
    radius: float
    n_required: int
    n_within: int | None
    nearest: float | None

    @property
    def verified(self) -> bool | None:
        return None if self.n_within is None else self.n_within >= self.n_required


Operator = np.ndarray | Callable[[np.ndarray], np.ndarray]


def _as_vector(psi) -> np.ndarray:
    return psi.coeffs if isinstance(psi, FockState) else np.asarray(psi, dtype=complex)


def _apply(A: Operator, v: np.ndarray) -> np.ndarray:
    return A @ v if isinstance(A, np.ndarray) else np.asarray(A(v), dtype=complex)


def _rounding(ev: np.ndarray) -> float:
    """Accuracy of a backward-stable symmetric eigensolver: dim * eps * ||A||."""
    return len(ev) * np.finfo(float).eps * max(1.0, float(np.abs(ev).max()))


def _spectrum_for(A: Operator, eigenvalues):
    if eigenvalues is not None:
        return np.asarray(eigenvalues, dtype=float)
    if isinstance(A, np.ndarray):
        return scipy.linalg.eigvalsh(A)
    return None


def quasimode_certificate(A: Operator, psi, mu: float, eigenvalues=None) -> QuasimodeCertificate:
    """Single quasimode: some eigenvalue lies within C = ||(A - mu) psi|| / ||psi||."""
    v = _as_vector(psi)
    v = v / np.linalg.norm(v)
    C = float(np.linalg.norm(_apply(A, v) - mu * v))
    ev = _spectrum_for(A, eigenvalues)
    if ev is None:
        return QuasimodeCertificate(mu, C, 0.0, C, 1, None, None)
    dist = np.abs(ev - mu)
    n_in = int(np.sum(dist <= C + _rounding(ev)))
    return QuasimodeCertificate(mu, C, 0.0, C, 1, n_in, float(ev[np.argmin(dist)]))


def quasimode_pair_certificate(A: Operator, psi_plus, psi_minus, mu: float,
                               eigenvalues=None, margin: float = 0.01) -> QuasimodeCertificate:
    """Two quasimodes with overlap theta < 1: two eigenvalues within 8C/(1 - theta) (1 + margin)."""
    u = _as_vector(psi_plus)
    w = _as_vector(psi_minus)
    u, w = u / np.linalg.norm(u), w / np.linalg.norm(w)
    theta = float(abs(np.vdot(w, u)))
    if theta >= 1.0:
        raise ValueError("quasimode pair is linearly dependent (theta >= 1)")
    C = max(float(np.linalg.norm(_apply(A, x) - mu * x)) for x in (u, w))
    D = 8.0 * C / (1.0 - theta) * (1.0 + margin)
    ev = _spectrum_for(A, eigenvalues)
    if ev is None:
        return QuasimodeCertificate(mu, C, theta, D, 2, None, None)
    dist = np.abs(ev - mu)
    n_in = int(np.sum(dist <= D + _rounding(ev)))
    return QuasimodeCertificate(mu, C, theta, D, 2, n_in, float(ev[np.argmin(dist)]))


def overlap_defect(f, g, k: int, N: int) -> tuple[float, float]:
    """(|<psi_f^k, psi_g^k> - <f, g>|, (1/4 pi N) ||f'||_0 ||g'||_0)."""
    F, G = as_fourier(f), as_fourier(g)
    K = max(F.K, G.K)
    exact = complex(np.vdot(G.padded(K), F.padded(K)))
    d = abs(lagrangian_state(F, k, N).inner(lagrangian_state(G, k, N)) - exact)
    return d, F.derivative().l2() * G.derivative().l2() / (4.0 * np.pi * N)


def edge_gram_deviation(pp: ProfilePair, N: int, side: int = -1, eta: float = 0.25) -> tuple[float, float]:
    """(max_{j,k <= 2M} |<phi_j, phi_k> - delta_jk|, (2K + 8 pi^2 F(N)^2)/(4 pi N))."""
    M = m_of(N, eta)
    states = [edge_quasimode(pp, N, j, side, eta)[0].coeffs for j in range(2 * M + 1)]
    S = np.array(states)
    G = S.conj() @ S.T
    dev = float(np.abs(G - np.eye(len(states))).max())
    bound = (2.0 * norms(pp).k_alpha_beta + 8.0 * np.pi ** 2 * float(N) ** (2 * eta)) / (4.0 * np.pi * N)
    return dev, bound
