"""Semiclassical spectra of periodic Toda lattices and their Hill-operator limits."""
from __future__ import annotations

__version__ = "0.1.0"

from .profiles import FourierPoly, HillPotential, NormBundle, PeriodicJacobiMatrix, ProfilePair, TrigPoly
from .jacobi import build_Q, discriminant, spectrum_of
from .hill import galerkin_eigs, hill_discriminant

__all__ = [
    "__version__", "FourierPoly", "HillPotential", "NormBundle", "PeriodicJacobiMatrix", "ProfilePair",
    "TrigPoly", "build_Q", "discriminant", "spectrum_of", "galerkin_eigs", "hill_discriminant",
]
