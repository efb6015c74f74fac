"""Spectral measures on (-pi, pi] and the functionals built from them.

A :class:`SpectralMeasure` is a probability measure ``F`` split into an
absolutely continuous part (a nonnegative :class:`~gafzeros.periodic.PeriodicFunction`
density, in mass per radian) and a finite list of atoms.  Its Fourier
coefficients are the covariances gamma(k) of the stationary coefficient
process; gamma(0) = 1 is enforced wherever normalization matters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NormalizationError
from .periodic import (TWOPI, GRID_M, PeriodicFunction, mean, panel_quad,
                       _segment_edges, t_operator, wrap_angle)

__all__ = [
    "SpectralMeasure", "CovarianceSequence", "covariance", "shift",
    "symmetrize", "antisymmetrize", "mean", "apply_T", "derivatives_at_zero",
]

_MASS_TOL = 1e-10
_COVARIANCE_CAP = 8192


@dataclass(frozen=True)
class SpectralMeasure:
    """Probability measure on (-pi, pi]: density part plus point masses."""

    density: PeriodicFunction | None = None
    atoms: tuple[tuple[float, float], ...] = ()
    label: str = ""

    def __post_init__(self):
        atoms = tuple((float(wrap_angle(t)), float(m)) for t, m in self.atoms)
        if any(m <= 0 for _, m in atoms):
            raise DomainError("atom masses must be positive")
        object.__setattr__(self, "atoms", atoms)

    @property
    def atom_mass(self) -> float:
        return math.fsum(m for _, m in self.atoms)

    @property
    def density_mass(self) -> float:
        return TWOPI * mean(self.density) if self.density is not None else 0.0

    def total_mass(self) -> float:
        return self.density_mass + self.atom_mass

    def validate_normalized(self):
        mass = self.total_mass()
        if abs(mass - 1.0) > _MASS_TOL:
            raise NormalizationError(
                f"total mass {mass!r} differs from 1 by more than {_MASS_TOL}")

    def has_density(self) -> bool:
        return self.density is not None

    def relative_density(self, phi: float = 0.0) -> PeriodicFunction:
        """Density against the uniform measure, re-centered at angle ``phi``.

        Returns 2*pi*density(s + phi); the uniform measure maps to the
        constant 1.  Intensity ratios are invariant under the overall scale,
        so this is the convenient slice for boundary work.
        """
        if self.density is None:
            raise DomainError("measure has no density part")
        return (TWOPI * self.density).shifted(float(phi))


def covariance(F: SpectralMeasure, k: int) -> complex:
    """Fourier coefficient of the measure: integral of exp(-i k t) dF(t)."""
    k = int(k)
    if abs(k) > _COVARIANCE_CAP:
        raise DomainError(f"|k| capped at {_COVARIANCE_CAP}")
    F.validate_normalized()
    out = 0.0 + 0.0j
    if F.density is not None:
        out += _density_fourier(F.density, k)
    for t, m in F.atoms:
        out += m * np.exp(-1j * k * t)
    return complex(out)


def _density_fourier(dens: PeriodicFunction, k: int) -> complex:
    if dens.trig is not None:
        tp = dens.trig
        if abs(k) > tp.degree:
            return 0.0 + 0.0j
        return complex(TWOPI * tp.c[tp.degree + k])
    if dens.breakpoints.size:
        edges = _segment_edges(dens.breakpoints, max_panel=min(0.4, 2.0 / (abs(k) + 1)))
        return complex(panel_quad(lambda s: dens(s) * np.exp(-1j * k * s), edges))
    m = max(4 * GRID_M, 8 * abs(k))
    s = wrap_angle(TWOPI * np.arange(m) / m)
    vals = dens(s)
    return complex(TWOPI * np.mean(vals * np.exp(-1j * k * s)))


def shift(F: SpectralMeasure, phi: float) -> SpectralMeasure:
    """Rotated measure: the shifted measure assigns to A the mass F(A + phi)."""
    phi = float(phi)
    dens = F.density.shifted(phi) if F.density is not None else None
    atoms = tuple((float(wrap_angle(t - phi)), m) for t, m in F.atoms)
    lab = f"{F.label}@{phi:+.4g}" if F.label else ""
    return SpectralMeasure(density=dens, atoms=atoms, label=lab)


def symmetrize(h: PeriodicFunction) -> PeriodicFunction:
    """Even part (h(s) + h(-s)) / 2."""
    return h.hat()


def antisymmetrize(h: PeriodicFunction) -> PeriodicFunction:
    """Odd part (h(s) - h(-s)) / 2."""
    return h.check()


def apply_T(h: PeriodicFunction, power: int = 1) -> PeriodicFunction:
    """Difference quotient (h(s) - h(0)) / (1 - cos s), iterated ``power`` times."""
    if power not in (1, 2, 3):
        raise DomainError("power must be 1, 2 or 3")
    return t_operator(h, power)


def derivatives_at_zero(h: PeriodicFunction, order: int) -> float:
    """Derivative of h at s = 0, order <= 4.

    Exact for trig polynomials; spectral differentiation for smooth sampled
    functions; a local polynomial fit on the surrounding constant piece for
    step-like functions whose breakpoints avoid 0.
    """
    if order < 0 or order > 4:
        raise DomainError("order must be between 0 and 4")
    if not h.smooth_at_zero:
        raise DomainError("function has a breakpoint at s = 0")
    return h.derivative_at_zero(order)


@dataclass(frozen=True)
class CovarianceSequence:
    """Covariances gamma(k), k = -K..K, of the coefficient process."""

    values: np.ndarray
    K: int = field(default=0)

    @classmethod
    def from_measure(cls, F: SpectralMeasure, K: int) -> "CovarianceSequence":
        vals = np.empty(2 * K + 1, dtype=complex)
        for k in range(0, K + 1):
            vals[K + k] = covariance(F, k)
            vals[K - k] = np.conj(vals[K + k])
        return cls(values=vals, K=K)

    def gamma(self, k: int) -> complex:
        if abs(k) > self.K:
            raise DomainError(f"|k| > {self.K}")
        return complex(self.values[self.K + k])

    def toeplitz(self) -> np.ndarray:
        n = self.K + 1
        idx = np.subtract.outer(np.arange(n), np.arange(n))
        return self.values[self.K + idx]

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.toeplitz()).min().real)

    def validate(self, psd_tol: float = 1e-10):
        if abs(self.gamma(0) - 1.0) > _MASS_TOL:
            raise NormalizationError("gamma(0) must equal 1")
        herm = np.abs(self.values - np.conj(self.values[::-1])).max()
        if herm > 1e-12:
            raise DomainError("sequence is not Hermitian")
        if self.min_eigenvalue() < -psd_tol:
            raise DomainError("Toeplitz matrix is not positive semidefinite")
