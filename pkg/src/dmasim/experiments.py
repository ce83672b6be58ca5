"""Batch experiment runner: validation and sweep studies emitting CSV files.

Every experiment is deterministic given its plan, scenario, and design: CSV
bodies are byte-identical across reruns, with a single timestamp comment line
at the top of each file. Monte-Carlo kinds derive one child seed per trial
from the plan seed, so ordering never depends on execution details.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .approx import gain_breakdown, power_normalized_gain
from .beamform import default_grid
from .channel import MultipathSpec, effective_channel, multipath_channel
from .metrics import GainSpectrum, max_data_rate, run_beamformer
from .params import DmaDesign, ScenarioConfig, override_fields, subcarrier_grid, wavelength

KINDS = (
    "validate-approx",
    "sweep-bandwidth",
    "sweep-tuning",
    "sweep-lambda",
    "sweep-angle",
    "sweep-spacing",
    "sweep-damping",
    "max-rate",
    "multipath-mc",
)

ALGORITHMS = ("center-frequency", "successive")

# Validation-study scenario knobs: small signal bandwidth isolates the fill
# and leakage factors; the per-subcarrier study uses a moderate bandwidth
# around a quarter-damping tuning range.
VALIDATE_NARROW_B = 5e7
VALIDATE_NARROW_K = 16
VALIDATE_WIDE_TUNING = 8e9
VALIDATE_SUBCARRIER_B = 5e7
VALIDATE_SUBCARRIER_K = 64
DEFAULT_LAMBDA_AXIS = (0.1, 0.3, 0.5, 0.7, 0.9)
DEFAULT_RATE_B_AXIS = (2.5e8, 5e8, 1e9, 1.5e9, 2e9)


@dataclass(frozen=True)
class ExperimentPlan:
    """One batch experiment: a kind, its sweep axis, and output location."""

    kind: str
    out_dir: Path
    axis: tuple = ()  # sweep values; empty selects the kind's default axis
    trials: int = 200  # Monte-Carlo kinds only
    seed: int = 0
    r_res: int = 1001
    pin_los: bool = False  # multipath: pin the first path to the LOS angle

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        axis = tuple(float(v) for v in self.axis)
        if not all(math.isfinite(v) for v in axis):
            raise ValueError("sweep axis values must be finite")
        if list(axis) != sorted(axis):
            raise ValueError("sweep axis values must be sorted ascending")
        if self.trials < 1:
            raise ValueError("trial count must be >= 1")
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "out_dir", Path(self.out_dir))


def _write_csv(path: Path, header: list[str], rows: list[list]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        handle.write(f"# generated {datetime.now(timezone.utc).isoformat()}\n")
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return path


SPECTRUM_HEADER = ["scenario_id", "algorithm", "k", "f_k", "gain", "rho", "se_k"]


def spectrum_rows(scenario_id: str, algorithm: str, frequencies, spectrum: GainSpectrum) -> list[list]:
    """Per-subcarrier result rows plus one summary row.

    The summary row reuses the three numeric columns as (g_sum, capacity,
    rate) and is flagged by k == "summary".
    """
    rows = [
        [scenario_id, algorithm, k, float(f), spectrum.gain[k], spectrum.rho[k], spectrum.se[k]]
        for k, f in enumerate(frequencies)
    ]
    rows.append([scenario_id, algorithm, "summary", "", spectrum.g_sum, spectrum.capacity, spectrum.rate])
    return rows


def parse_spectrum_csv(path) -> tuple[list[dict], dict]:
    """Read a spectrum CSV back: (per-subcarrier dicts, summary dict)."""
    per_k: list[dict] = []
    summary: dict = {}
    with open(path, "r", encoding="utf-8") as handle:
        lines = [line for line in handle if not line.startswith("#")]
    reader = csv.DictReader(lines)
    for row in reader:
        if row["k"] == "summary":
            summary = {
                "scenario_id": row["scenario_id"],
                "algorithm": row["algorithm"],
                "g_sum": float(row["gain"]),
                "capacity": float(row["rho"]),
                "rate": float(row["se_k"]),
            }
        else:
            per_k.append(
                {
                    "scenario_id": row["scenario_id"],
                    "algorithm": row["algorithm"],
                    "k": int(row["k"]),
                    "f_k": float(row["f_k"]),
                    "gain": float(row["gain"]),
                    "rho": float(row["rho"]),
                    "se_k": float(row["se_k"]),
                }
            )
    return per_k, summary


def _both_algorithms(cfg: ScenarioConfig, design: DmaDesign, r_res: int) -> dict[str, GainSpectrum]:
    channels = effective_channel(cfg, design)
    grid = default_grid(design, r_res)
    return {alg: run_beamformer(alg, channels, cfg, design, grid)[1] for alg in ALGORITHMS}


def validation_tuning_sweep(cfg: ScenarioConfig, design: DmaDesign, axis, r_res: int) -> list[list]:
    """Sum-gain comparison, simulated vs approximate, across the tuning bandwidth."""
    narrow = override_fields(cfg, b=VALIDATE_NARROW_B, k=VALIDATE_NARROW_K)
    rows = []
    for b_tune in axis:
        d = override_fields(design, b_tune=float(b_tune))
        channels = effective_channel(narrow, d)
        _, spectrum = run_beamformer("center-frequency", channels, narrow, d, default_grid(d, r_res))
        breakdown = gain_breakdown(narrow, d)
        approx_sum = float(np.sum(power_normalized_gain(breakdown, d)))
        rel_err = abs(approx_sum - spectrum.g_sum) / spectrum.g_sum
        rows.append([float(b_tune), spectrum.g_sum, approx_sum, breakdown.fill_penalty, rel_err])
    return rows


def validation_lambda_sweep(cfg: ScenarioConfig, design: DmaDesign, axis, r_res: int) -> list[list]:
    """Sum-gain comparison across the fractional radiated power, wide tuning."""
    narrow = override_fields(cfg, b=VALIDATE_NARROW_B, k=VALIDATE_NARROW_K)
    rows = []
    for lam in axis:
        d = override_fields(design, lambda_frac=float(lam), b_tune=VALIDATE_WIDE_TUNING)
        channels = effective_channel(narrow, d)
        _, spectrum = run_beamformer("center-frequency", channels, narrow, d, default_grid(d, r_res))
        breakdown = gain_breakdown(narrow, d)
        approx_sum = float(np.sum(power_normalized_gain(breakdown, d)))
        rel_err = abs(approx_sum - spectrum.g_sum) / spectrum.g_sum
        rows.append([float(lam), spectrum.g_sum, approx_sum, breakdown.leakage_penalty, rel_err])
    return rows


def validation_per_subcarrier(cfg: ScenarioConfig, design: DmaDesign, r_res: int) -> list[list]:
    """Per-subcarrier gain, simulated vs approximate, wide tuning bandwidth."""
    sub_cfg = override_fields(cfg, b=VALIDATE_SUBCARRIER_B, k=VALIDATE_SUBCARRIER_K)
    d = override_fields(design, b_tune=VALIDATE_WIDE_TUNING)
    channels = effective_channel(sub_cfg, d)
    _, spectrum = run_beamformer("center-frequency", channels, sub_cfg, d, default_grid(d, r_res))
    breakdown = gain_breakdown(sub_cfg, d)
    approx = power_normalized_gain(breakdown, d)
    rows = []
    for k, f_k in enumerate(subcarrier_grid(sub_cfg).frequencies):
        rows.append(
            [
                k,
                float(f_k),
                spectrum.gain[k],
                approx[k],
                breakdown.squint_gain[k],
                breakdown.fill_penalty,
                breakdown.leakage_penalty,
                d.b_tune,
            ]
        )
    return rows


def run_plan(plan: ExperimentPlan, cfg: ScenarioConfig, design: DmaDesign) -> list[Path]:
    """Execute one experiment plan; returns the written file paths."""
    out = plan.out_dir
    written: list[Path] = []

    if plan.kind == "validate-approx":
        axis = plan.axis or tuple(design.gamma * s for s in (0.25, 0.5, 1.0, 2.0, 4.0))
        written.append(
            _write_csv(
                out / "tuning_sweep.csv",
                ["b_tune", "g_cf_sum", "g_approx_sum", "fill_penalty", "rel_err"],
                validation_tuning_sweep(cfg, design, axis, plan.r_res),
            )
        )
        written.append(
            _write_csv(
                out / "lambda_sweep.csv",
                ["lambda", "g_cf_sum", "g_approx_sum", "leakage_penalty", "rel_err"],
                validation_lambda_sweep(cfg, design, DEFAULT_LAMBDA_AXIS, plan.r_res),
            )
        )
        written.append(
            _write_csv(
                out / "per_subcarrier.csv",
                ["k", "f_k", "sim_gain", "approx_gain", "squint_gain", "fill_penalty", "leakage_penalty", "b_tune"],
                validation_per_subcarrier(cfg, design, plan.r_res),
            )
        )

    elif plan.kind == "sweep-bandwidth":
        axis = plan.axis or DEFAULT_RATE_B_AXIS
        rows = []
        for b in axis:
            spectra = _both_algorithms(override_fields(cfg, b=float(b)), design, plan.r_res)
            rows.append(
                [
                    float(b),
                    spectra["center-frequency"].capacity,
                    spectra["successive"].capacity,
                    spectra["center-frequency"].rate,
                    spectra["successive"].rate,
                ]
            )
        written.append(_write_csv(out / "sweep_bandwidth.csv", ["b", "se_cf", "se_succ", "rate_cf", "rate_succ"], rows))
        grid_freqs = subcarrier_grid(cfg).frequencies
        for alg, spectrum in _both_algorithms(cfg, design, plan.r_res).items():
            written.append(
                _write_csv(
                    out / f"spectrum_{alg}.csv",
                    SPECTRUM_HEADER,
                    spectrum_rows("template", alg, grid_freqs, spectrum),
                )
            )

    elif plan.kind == "sweep-tuning":
        axis = plan.axis or tuple(design.gamma * s for s in (0.25, 0.5, 1.0, 2.0, 4.0))
        rows = []
        for b_tune in axis:
            d = override_fields(design, b_tune=float(b_tune))
            spectra = _both_algorithms(cfg, d, plan.r_res)
            rows.append(
                [
                    float(b_tune),
                    spectra["center-frequency"].capacity,
                    spectra["successive"].capacity,
                    spectra["center-frequency"].g_sum,
                    spectra["successive"].g_sum,
                ]
            )
        written.append(
            _write_csv(out / "sweep_tuning.csv", ["b_tune", "se_cf", "se_succ", "g_sum_cf", "g_sum_succ"], rows)
        )

    elif plan.kind == "sweep-lambda":
        axis = plan.axis or DEFAULT_LAMBDA_AXIS
        rows = []
        for lam in axis:
            d = override_fields(design, lambda_frac=float(lam))
            spectra = _both_algorithms(cfg, d, plan.r_res)
            rows.append(
                [
                    float(lam),
                    spectra["center-frequency"].capacity,
                    spectra["successive"].capacity,
                    spectra["center-frequency"].g_sum,
                    spectra["successive"].g_sum,
                ]
            )
        written.append(
            _write_csv(out / "sweep_lambda.csv", ["lambda", "se_cf", "se_succ", "g_sum_cf", "g_sum_succ"], rows)
        )

    elif plan.kind == "sweep-angle":
        axis = plan.axis or tuple(math.radians(a) for a in range(-60, 61, 20))
        rows = []
        for phi in axis:
            spectra = _both_algorithms(override_fields(cfg, phi_t=float(phi)), design, plan.r_res)
            rows.append([float(phi), spectra["center-frequency"].capacity, spectra["successive"].capacity])
        written.append(_write_csv(out / "sweep_angle.csv", ["phi_t", "se_cf", "se_succ"], rows))

    elif plan.kind == "sweep-spacing":
        lam = wavelength(design.f_t)
        axis = plan.axis or (lam / 4.0, lam / 3.0, lam / 2.0)
        aperture = design.n_slot * design.d_x
        rows = []
        for d_x in axis:
            n_slot = max(1, round(aperture / d_x))
            d = override_fields(design, d_x=float(d_x), n_slot=n_slot)
            spectra = _both_algorithms(cfg, d, plan.r_res)
            rows.append(
                [float(d_x), n_slot, spectra["center-frequency"].capacity, spectra["successive"].capacity]
            )
        written.append(_write_csv(out / "sweep_spacing.csv", ["d_x", "n_slot", "se_cf", "se_succ"], rows))

    elif plan.kind == "sweep-damping":
        axis = plan.axis or (50.0, 100.0, 200.0)
        rows = []
        for q in axis:
            d = override_fields(design, q=float(q))
            spectra = _both_algorithms(cfg, d, plan.r_res)
            rows.append(
                [
                    float(q),
                    spectra["center-frequency"].capacity,
                    spectra["successive"].capacity,
                    spectra["center-frequency"].rate,
                    spectra["successive"].rate,
                ]
            )
        written.append(_write_csv(out / "sweep_damping.csv", ["q", "se_cf", "se_succ", "rate_cf", "rate_succ"], rows))

    elif plan.kind == "max-rate":
        axis = plan.axis or tuple(design.gamma * s for s in (0.25, 0.5, 1.0, 2.0, 4.0))
        rows = []
        for b_tune in axis:
            d = override_fields(design, b_tune=float(b_tune))
            d_max_cf, _ = max_data_rate(cfg, d, DEFAULT_RATE_B_AXIS, "center-frequency", plan.r_res)
            d_max_succ, _ = max_data_rate(cfg, d, DEFAULT_RATE_B_AXIS, "successive", plan.r_res)
            rows.append([float(b_tune), d_max_cf, d_max_succ])
        written.append(_write_csv(out / "max_rate.csv", ["b_tune", "d_max_cf", "d_max_succ"], rows))

    elif plan.kind == "multipath-mc":
        axis = plan.axis or (1.0, 2.0, 4.0)
        rows = []
        for l_idx, l_path in enumerate(axis):
            if l_path != int(l_path) or l_path < 1:
                raise ValueError("path counts must be positive integers")
            per_alg = {alg: [] for alg in ALGORITHMS}
            grid = default_grid(design, plan.r_res)
            for trial in range(plan.trials):
                child = int(np.random.SeedSequence((plan.seed, l_idx, trial)).generate_state(1)[0])
                spec = MultipathSpec(l_path=int(l_path), seed=child, pin_first_to_los=plan.pin_los)
                channels = multipath_channel(spec, cfg, design)
                for alg in ALGORITHMS:
                    _, spectrum = run_beamformer(alg, channels, cfg, design, grid)
                    per_alg[alg].append(spectrum.capacity)
            for alg in ALGORITHMS:
                values = np.asarray(per_alg[alg])
                stderr = float(values.std(ddof=1) / math.sqrt(values.size)) if values.size > 1 else 0.0
                rows.append([float(l_path), alg, float(values.mean()), stderr, values.size])
        written.append(
            _write_csv(out / "multipath_mc.csv", ["l_path", "algorithm", "mean_se", "stderr_se", "trials"], rows)
        )

    else:  # pragma: no cover - guarded by ExperimentPlan validation
        raise ValueError(f"unknown experiment kind {plan.kind!r}")

    return written
