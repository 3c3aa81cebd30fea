"""Trigonometric-polynomial profiles, Flaschka sampling and Hill potentials.

Profiles are 1-periodic real trigonometric polynomials.  Complex trigonometric
polynomials (needed for state densities after Fourier multipliers) are held in
:class:`FourierPoly`, which stores the coefficients f_m of exp(2 pi i m x).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

TWO_PI = 2.0 * np.pi


def _trim(coeffs: Sequence[float]) -> tuple[float, ...]:
    c = [float(v) for v in coeffs]
    while c and c[-1] == 0.0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class TrigPoly:
    """p(x) = constant + sum_m cos_coeffs[m-1] cos(2 pi m x) + sin_coeffs[m-1] sin(2 pi m x)."""

    constant: float = 0.0
    cos_coeffs: tuple[float, ...] = ()
    sin_coeffs: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "constant", float(self.constant))
        object.__setattr__(self, "cos_coeffs", _trim(self.cos_coeffs))
        object.__setattr__(self, "sin_coeffs", _trim(self.sin_coeffs))

    @property
    def max_harmonic(self) -> int:
        return max(len(self.cos_coeffs), len(self.sin_coeffs))

    def is_zero(self) -> bool:
        return self.constant == 0.0 and not self.cos_coeffs and not self.sin_coeffs

    def __call__(self, x):
        return eval_trigpoly(self, x)

    def to_fourier(self) -> "FourierPoly":
        K = self.max_harmonic
        c = np.zeros(2 * K + 1, dtype=complex)
        c[K] = self.constant
        for m, a in enumerate(self.cos_coeffs, start=1):
            c[K + m] += a / 2
            c[K - m] += a / 2
        for m, b in enumerate(self.sin_coeffs, start=1):
            c[K + m] += -0.5j * b
            c[K - m] += 0.5j * b
        return FourierPoly(c)

    def derivative(self, order: int = 1) -> "TrigPoly":
        return self.to_fourier().derivative(order).to_real()

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        return (self.to_fourier() + other.to_fourier()).to_real()

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        return (self.to_fourier() - other.to_fourier()).to_real()

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            return (self.to_fourier() * other.to_fourier()).to_real()
        s = float(other)
        return TrigPoly(s * self.constant, [s * v for v in self.cos_coeffs],
                        [s * v for v in self.sin_coeffs])

    __rmul__ = __mul__

    def __neg__(self) -> "TrigPoly":
        return -1.0 * self

    def to_dict(self) -> dict:
        return {"constant": self.constant, "cos": list(self.cos_coeffs), "sin": list(self.sin_coeffs)}

    @classmethod
    def from_dict(cls, d: dict) -> "TrigPoly":
        return cls(d.get("constant", 0.0), d.get("cos", ()), d.get("sin", ()))


@dataclass(frozen=True, eq=False)
class FourierPoly:
    """Complex trig polynomial sum_{|m|<=K} coeffs[m+K] exp(2 pi i m x)."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or len(c) % 2 == 0:
            raise ValueError("coefficient vector must have odd length 2K+1")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_modes(cls, modes: dict[int, complex]) -> "FourierPoly":
        K = max((abs(m) for m in modes), default=0)
        c = np.zeros(2 * K + 1, dtype=complex)
        for m, v in modes.items():
            c[K + m] += v
        return cls(c)

    @property
    def K(self) -> int:
        return (len(self.coeffs) - 1) // 2

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.K, self.K + 1)

    def coeff(self, m: int) -> complex:
        return complex(self.coeffs[self.K + m]) if abs(m) <= self.K else 0j

    def padded(self, K: int) -> np.ndarray:
        if K < self.K:
            raise ValueError("cannot pad to a smaller degree")
        out = np.zeros(2 * K + 1, dtype=complex)
        out[K - self.K:K + self.K + 1] = self.coeffs
        return out

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        ph = np.exp(2j * np.pi * np.multiply.outer(x, self.modes))
        return ph @ self.coeffs

    def __add__(self, other: "FourierPoly") -> "FourierPoly":
        K = max(self.K, other.K)
        return FourierPoly(self.padded(K) + other.padded(K))

    def __sub__(self, other: "FourierPoly") -> "FourierPoly":
        K = max(self.K, other.K)
        return FourierPoly(self.padded(K) - other.padded(K))

    def __mul__(self, other):
        if isinstance(other, FourierPoly):
            return FourierPoly(np.convolve(self.coeffs, other.coeffs))
        return FourierPoly(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __neg__(self) -> "FourierPoly":
        return FourierPoly(-self.coeffs)

    def multiplier(self, fn: Callable[[np.ndarray], np.ndarray]) -> "FourierPoly":
        """Apply the Fourier multiplier m -> fn(m)."""
        return FourierPoly(self.coeffs * fn(self.modes))

    def derivative(self, order: int = 1) -> "FourierPoly":
        return self.multiplier(lambda m: (2j * np.pi * m) ** order)

    def translate(self, shift: float) -> "FourierPoly":
        """x -> f(x + shift)."""
        return self.multiplier(lambda m: np.exp(2j * np.pi * m * shift))

    def conj(self) -> "FourierPoly":
        return FourierPoly(np.conj(self.coeffs[::-1]))

    def to_real(self, tol: float = 1e-12) -> TrigPoly:
        c = self.coeffs
        K = self.K
        scale = max(1.0, float(np.abs(c).max(initial=0.0)))
        if np.abs(c - np.conj(c[::-1])).max(initial=0.0) > tol * scale:
            raise ValueError("trig polynomial is not real valued")
        pos = c[K + 1:]
        return TrigPoly(c[K].real, 2 * pos.real, -2 * pos.imag)

    def l2(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def sobolev(self, ell: int) -> float:
        w = (1.0 + np.abs(self.modes)) ** (2 * ell)
        return float(np.sqrt(np.sum(w * np.abs(self.coeffs) ** 2)))

    def on_grid(self, n_points: int) -> np.ndarray:
        """Exact values at x_j = j/n_points via an inverse FFT (modes folded mod n_points)."""
        buf = np.zeros(n_points, dtype=complex)
        np.add.at(buf, self.modes % n_points, self.coeffs)
        return np.fft.ifft(buf) * n_points

    def sup(self, n_points: int | None = None) -> float:
        return float(np.abs(self.on_grid(n_points or grid_size(self.K))).max())


def grid_size(max_harmonic: int) -> int:
    """Uniform grid used for C-norm suprema."""
    return max(4096, 64 * int(max_harmonic))


def as_fourier(f) -> FourierPoly:
    if isinstance(f, FourierPoly):
        return f
    if isinstance(f, TrigPoly):
        return f.to_fourier()
    raise TypeError(f"expected TrigPoly or FourierPoly, got {type(f).__name__}")


def eval_trigpoly(p: TrigPoly, x):
    x = np.asarray(x, dtype=float)
    out = np.full(x.shape, p.constant)
    for m, a in enumerate(p.cos_coeffs, start=1):
        out = out + a * np.cos(TWO_PI * m * x)
    for m, b in enumerate(p.sin_coeffs, start=1):
        out = out + b * np.sin(TWO_PI * m * x)
    return out if out.ndim else float(out)


def frequency_double(p: TrigPoly) -> TrigPoly:
    """The trig polynomial of x -> p(2x)."""
    def spread(c):
        out = [0.0] * (2 * len(c))
        out[1::2] = c
        return out
    return TrigPoly(p.constant, spread(p.cos_coeffs), spread(p.sin_coeffs))


def c_norm(f, order: int = 0, n_points: int | None = None) -> float:
    """sup_x sum_{j<=order} |f^(j)(x)| on a uniform grid."""
    F = as_fourier(f)
    n = n_points or grid_size(F.K)
    total = np.zeros(n)
    for j in range(order + 1):
        total += np.abs(F.derivative(j).on_grid(n))
    return float(total.max())


def sobolev_norm(f, ell: int) -> float:
    return as_fourier(f).sobolev(ell)


@dataclass(frozen=True)
class ProfilePair:
    alpha: TrigPoly = field(default_factory=TrigPoly)
    beta: TrigPoly = field(default_factory=TrigPoly)

    def __post_init__(self):
        if self.alpha.constant != 0.0 or self.beta.constant != 0.0:
            raise ValueError("profiles must have zero mean")

    @property
    def max_harmonic(self) -> int:
        return max(self.alpha.max_harmonic, self.beta.max_harmonic)

    def is_free(self) -> bool:
        return self.alpha.is_zero() and self.beta.is_zero()

    def scaled(self, s: float) -> "ProfilePair":
        return ProfilePair(s * self.alpha, s * self.beta)

    def to_dict(self) -> dict:
        return {"alpha": self.alpha.to_dict(), "beta": self.beta.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "ProfilePair":
        return cls(TrigPoly.from_dict(d.get("alpha", {})), TrigPoly.from_dict(d.get("beta", {})))


@dataclass(frozen=True, eq=False)
class PeriodicJacobiMatrix:
    """Flaschka data (b, a) of a periodic Jacobi matrix.

    ``da`` holds a - 1 without cancellation; ``doubled`` marks the period-doubled Q.
    """

    b: np.ndarray
    a: np.ndarray
    da: np.ndarray | None = None
    doubled: bool = False

    def __post_init__(self):
        b = np.asarray(self.b, dtype=float)
        a = np.asarray(self.a, dtype=float)
        if b.shape != a.shape or b.ndim != 1 or len(b) < 2:
            raise ValueError("b and a must be vectors of equal length >= 2")
        if np.any(a <= 0):
            raise ValueError("all a_n must be positive")
        da = a - 1.0 if self.da is None else np.asarray(self.da, dtype=float)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "da", da)

    @property
    def n_sites(self) -> int:
        return len(self.b)

    def double(self) -> "PeriodicJacobiMatrix":
        return PeriodicJacobiMatrix(np.tile(self.b, 2), np.tile(self.a, 2), np.tile(self.da, 2), True)


def coupling(N: int) -> float:
    return 1.0 / (2.0 * N) ** 2


def sample_flaschka(pp: ProfilePair, N: int) -> PeriodicJacobiMatrix:
    if N < 2:
        raise ValueError("N must be at least 2")
    eps = coupling(N)
    x = np.arange(1, N + 1) / N
    b = eps * eval_trigpoly(pp.beta, x)
    da = eps * eval_trigpoly(pp.alpha, x)
    a = 1.0 + da
    if np.any(a <= 0):
        raise ValueError(f"profile amplitude too large for N={N}: some a_n <= 0")
    return PeriodicJacobiMatrix(b, a, da)


@dataclass(frozen=True)
class HillPotential:
    """Potential of period 1/2 (even harmonics only) with zero mean."""

    q: TrigPoly
    label: str = ""

    def __post_init__(self):
        q = self.q
        if q.constant != 0.0:
            raise ValueError("Hill potential must have zero mean")
        if any(q.cos_coeffs[0::2]) or any(q.sin_coeffs[0::2]):
            raise ValueError("Hill potential must contain only even harmonics")

    def __call__(self, x):
        return eval_trigpoly(self.q, x)

    def is_zero(self) -> bool:
        return self.q.is_zero()


def hill_potentials(pp: ProfilePair) -> tuple[HillPotential, HillPotential]:
    """(q_plus, q_minus) with q_pm(x) = -2 alpha(2x) -/+ beta(2x)."""
    a2 = frequency_double(pp.alpha)
    b2 = frequency_double(pp.beta)
    q_plus = -2.0 * a2 - b2
    q_minus = -2.0 * a2 + b2
    return HillPotential(q_plus, "+"), HillPotential(q_minus, "-")


@dataclass(frozen=True)
class NormBundle:
    c0: float
    c2: float
    sobolev: tuple[float, float, float]
    k_alpha_beta: float


def norms(pp: ProfilePair) -> NormBundle:
    """Norms of the pair, each summed over alpha and beta."""
    c0 = c_norm(pp.alpha, 0) + c_norm(pp.beta, 0)
    c2 = c_norm(pp.alpha, 2) + c_norm(pp.beta, 2)
    sob = tuple(sobolev_norm(pp.alpha, l) + sobolev_norm(pp.beta, l) for l in range(3))
    return NormBundle(c0, c2, sob, c2 + 1.0)
