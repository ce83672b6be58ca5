"""Per-subcarrier channel vectors: wireless array response, waveguide phase
advance, leakage taper, and an optional seeded multipath extension.

Channel construction is pure; a ChannelSet is immutable after construction
and safe to share across workers.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .params import C_LIGHT, DmaDesign, ScenarioConfig, SubcarrierGrid, leakage_constant, subcarrier_grid, waveguide_beta


@dataclass(frozen=True)
class ChannelSet:
    """Effective channel h, leakage taper h_att, and the subcarrier grid.

    For the line-of-sight model every h entry has unit modulus and `phases`
    holds the unwrapped per-element channel phase; multipath channels leave
    `phases` as None.
    """

    h: np.ndarray  # (k, n_slot) complex
    h_att: np.ndarray  # (k, n_slot) real taper in (0, 1], first column 1
    grid: SubcarrierGrid
    phases: np.ndarray | None = None  # (k, n_slot) unwrapped phase [rad]

    def __post_init__(self):
        for name in ("h", "h_att", "phases"):
            arr = getattr(self, name)
            if arr is not None:
                arr = np.asarray(arr)
                arr.flags.writeable = False
                object.__setattr__(self, name, arr)
        if self.h.shape != self.h_att.shape:
            raise ValueError("channel and leakage arrays must share a shape")

    @property
    def n_slot(self) -> int:
        return self.h.shape[1]

    @property
    def k(self) -> int:
        return self.h.shape[0]


@dataclass(frozen=True)
class MultipathSpec:
    """Seeded ray-sum channel: complex-normal path gains with total unit
    average power, angles uniform on [-60 deg, 60 deg], delays uniform on
    [0, 50 ns]."""

    l_path: int = 4
    seed: int = 0
    pin_first_to_los: bool = False  # first path: gain 1/sqrt(L), delay 0, LOS angle
    angle_max: float = math.radians(60.0)  # [rad]
    delay_max: float = 50e-9  # [s]

    def __post_init__(self):
        if self.l_path < 1:
            raise ValueError("path count must be >= 1")


def array_response(phi_t: float, f_k: float, design: DmaDesign) -> np.ndarray:
    """Transmit array response exp(j*n*(2*pi*f_k/c)*d_x*sin(phi_t)), n = 0..n_slot-1."""
    if abs(phi_t) >= math.pi / 2:
        raise ValueError("steering angle must satisfy |phi_t| < pi/2")
    n = np.arange(design.n_slot)
    step = (2 * math.pi * f_k / C_LIGHT) * design.d_x * math.sin(phi_t)
    return np.exp(1j * n * step)


def waveguide_phase_vector(f_k: float, design: DmaDesign) -> np.ndarray:
    """Waveguide phase advance exp(-j*n*d_x*beta_g(f_k)); zero phase at the feed."""
    n = np.arange(design.n_slot)
    return np.exp(-1j * n * design.d_x * waveguide_beta(f_k, design))


def leakage_vector(f_k: float, design: DmaDesign) -> np.ndarray:
    """Leakage taper exp(-n*d_x*alpha_g); flat across subcarriers by design."""
    if design.n_slot == 1:
        return np.ones(1)
    n = np.arange(design.n_slot)
    return np.exp(-n * design.d_x * leakage_constant(design))


def channel_phase_step(f_k, cfg: ScenarioConfig, design: DmaDesign):
    """Per-element phase increment of the effective channel [rad/element].

    Combines the wireless advance (2*pi*f/c)*d_x*sin(phi_t) with the waveguide
    advance -d_x*beta_g(f); element n carries n times this value.
    """
    f_k = np.asarray(f_k, dtype=float)
    wireless = (2 * math.pi * f_k / C_LIGHT) * design.d_x * math.sin(cfg.phi_t)
    out = wireless - design.d_x * waveguide_beta(f_k, design)
    return float(out) if out.ndim == 0 else out


def effective_channel(cfg: ScenarioConfig, design: DmaDesign, grid: SubcarrierGrid | None = None) -> ChannelSet:
    """Line-of-sight channel: elementwise array response times waveguide advance, per subcarrier."""
    if grid is None:
        grid = subcarrier_grid(cfg)
    n = np.arange(design.n_slot)
    h = np.empty((grid.k, design.n_slot), dtype=complex)
    for i, f_k in enumerate(grid.frequencies):
        h[i] = array_response(cfg.phi_t, f_k, design) * waveguide_phase_vector(f_k, design)
    steps = channel_phase_step(grid.frequencies, cfg, design)
    phases = np.asarray(steps)[:, None] * n[None, :]
    h_att = np.tile(leakage_vector(grid.f_center, design), (grid.k, 1))
    return ChannelSet(h=h, h_att=h_att, grid=grid, phases=phases)


def multipath_channel(
    spec: MultipathSpec, cfg: ScenarioConfig, design: DmaDesign, grid: SubcarrierGrid | None = None
) -> ChannelSet:
    """Seeded ray-sum channel combined with the waveguide phase advance.

    h[k] = (sum_l g_l * a(phi_l, f_k) * exp(-j*2*pi*f_k*tau_l)) (.) h_dma[k];
    the leakage taper is unchanged. Identical seeds give bit-identical output.
    """
    if grid is None:
        grid = subcarrier_grid(cfg)
    rng = np.random.default_rng(spec.seed)
    l_path = spec.l_path
    scale = math.sqrt(1.0 / (2.0 * l_path))
    gains = scale * (rng.standard_normal(l_path) + 1j * rng.standard_normal(l_path))
    angles = rng.uniform(-spec.angle_max, spec.angle_max, l_path)
    delays = rng.uniform(0.0, spec.delay_max, l_path)
    if spec.pin_first_to_los:
        gains[0] = 1.0 / math.sqrt(l_path)
        angles[0] = cfg.phi_t
        delays[0] = 0.0

    h = np.zeros((grid.k, design.n_slot), dtype=complex)
    for i, f_k in enumerate(grid.frequencies):
        rays = np.zeros(design.n_slot, dtype=complex)
        for g, phi, tau in zip(gains, angles, delays):
            rays += g * array_response(phi, f_k, design) * np.exp(-2j * math.pi * f_k * tau)
        h[i] = rays * waveguide_phase_vector(f_k, design)
    h_att = np.tile(leakage_vector(grid.f_center, design), (grid.k, 1))
    return ChannelSet(h=h, h_att=h_att, grid=grid, phases=None)


def dump_channel_csv(channels: ChannelSet, path) -> None:
    """Write (k, f_k, n, Re h, Im h, h_att) rows for every subcarrier/element pair."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["k", "f_k", "n", "re_h", "im_h", "h_att"])
        for i, f_k in enumerate(channels.grid.frequencies):
            for n in range(channels.n_slot):
                val = complex(channels.h[i, n])
                writer.writerow(
                    [i, repr(float(f_k)), n, repr(val.real), repr(val.imag), repr(float(channels.h_att[i, n]))]
                )
