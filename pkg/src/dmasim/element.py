"""Tunable Lorentzian DMA element: polarizability, phase forms, and tuning range.

The normalized polarizability is the canonical beamforming weight. It always
lies on the circle of radius 1/2 centered at -j/2 in the complex plane; that
circle membership is the enforced weight constraint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import DmaDesign


@dataclass(frozen=True)
class TuningRange:
    """Achievable resonant-frequency interval [f_r_min, f_r_max]."""

    f_r_min: float
    f_r_max: float

    def __post_init__(self):
        if self.f_r_min > self.f_r_max:
            raise ValueError("tuning range must satisfy f_r_min <= f_r_max")

    @property
    def width(self) -> float:
        return self.f_r_max - self.f_r_min

    def contains(self, f_r) -> bool:
        f_r = np.asarray(f_r)
        return bool(np.all(f_r >= self.f_r_min) and np.all(f_r <= self.f_r_max))


def tuning_range(design: DmaDesign) -> TuningRange:
    """Tuning interval of width b_tune centered on the design carrier."""
    half = design.b_tune / 2.0
    return TuningRange(design.f_t - half, design.f_t + half)


@dataclass(frozen=True)
class ResonanceConfiguration:
    """One resonant frequency per DMA element, in waveguide-feed order."""

    f_r: np.ndarray  # [Hz], length n_slot

    def __post_init__(self):
        f_r = np.asarray(self.f_r, dtype=float)
        f_r.flags.writeable = False
        object.__setattr__(self, "f_r", f_r)

    @property
    def n_slot(self) -> int:
        return self.f_r.size


def polarizability(f, f_r, design: DmaDesign):
    """Magnetic polarizability 2*pi*f^2*F / (2*pi*f_r^2 - 2*pi*f^2 + j*Gamma*f).

    The damping term j*Gamma*f keeps the denominator away from zero for all
    real frequencies.
    """
    f = np.asarray(f, dtype=float)
    f_r = np.asarray(f_r, dtype=float)
    num = 2 * math.pi * f * f * design.f_coupl
    den = 2 * math.pi * f_r * f_r - 2 * math.pi * f * f + 1j * design.gamma * f
    out = num / den
    return complex(out) if out.ndim == 0 else out


def _detuning(f, f_r, design: DmaDesign):
    """Normalized detuning x = 2*pi*(f_r^2 - f^2) / (Gamma*f)."""
    f = np.asarray(f, dtype=float)
    f_r = np.asarray(f_r, dtype=float)
    return 2 * math.pi * (f_r * f_r - f * f) / (design.gamma * f)


def normalized_polarizability(f, f_r, design: DmaDesign):
    """Unit-peak beamforming weight 1/(x + j) with x the normalized detuning.

    Algebraically equal to the polarizability divided by Q_k*F_coupl, so the
    coupling factor cancels. Peak amplitude 1 occurs exactly at f == f_r.
    """
    x = _detuning(f, f_r, design)
    out = 1.0 / (x + 1j)
    return complex(out) if out.ndim == 0 else out


def polarizability_phase(f, f_r, design: DmaDesign):
    """Resonance phase arctan(x) in (-pi/2, pi/2).

    The argument of the normalized weight itself is this value minus pi/2.
    """
    out = np.arctan(_detuning(f, f_r, design))
    return float(out) if out.ndim == 0 else out


def linear_phase_approx(f, f_r, design: DmaDesign):
    """First-order model -pi/2 - (4*pi/Gamma)*(f - f_r) of the weight argument.

    Matches the exact argument and its frequency slope at f == f_r.
    """
    f = np.asarray(f, dtype=float)
    f_r = np.asarray(f_r, dtype=float)
    out = -math.pi / 2 - (4 * math.pi / design.gamma) * (f - f_r)
    return float(out) if out.ndim == 0 else out


def lorentzian_weight(zeta):
    """Point -(j - exp(j*zeta))/2 of the constrained-weight circle."""
    zeta = np.asarray(zeta, dtype=float)
    out = -(1j - np.exp(1j * zeta)) / 2.0
    return complex(out) if out.ndim == 0 else out


def dma_weight_vector(res: ResonanceConfiguration, f_k: float, design: DmaDesign):
    """Per-element weights at one subcarrier for a resonance configuration.

    Rejects resonances outside the design tuning range.
    """
    rng = tuning_range(design)
    if not rng.contains(res.f_r):
        raise ValueError("resonance configuration leaves the tuning range")
    return normalized_polarizability(f_k, res.f_r, design)


def dma_weight_matrix(res: ResonanceConfiguration, frequencies, design: DmaDesign):
    """Weights for every (subcarrier, element) pair; shape (k, n_slot)."""
    rng = tuning_range(design)
    if not rng.contains(res.f_r):
        raise ValueError("resonance configuration leaves the tuning range")
    freq = np.asarray(frequencies, dtype=float)
    return normalized_polarizability(freq[:, None], res.f_r[None, :], design)
