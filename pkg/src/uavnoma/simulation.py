"""
Experiment runners: DoF table, rate-versus-power sweep, single-draw record.

Every trial draws its channels and terrestrial users from a seed derived
from ``(master_seed, trial_index)``, so a sweep gives identical numbers
whether trials run serially or in a process pool.
"""

import csv
import dataclasses
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _seeding
from .association import Association, assign_by_effective_sinr, assign_random
from .beamforming import (
    POWER_TOL,
    ZF_TOL,
    achievable_rates,
    allocate,
    solve_groups,
    verify_interference,
)
from .channel import (
    ChannelModelParams,
    build_topology,
    dbm_to_watts,
    effective_sinr,
    sample_channels,
    terrestrial_profile,
)
from .dof import group_sizes, max_dof
from .errors import (
    ConfigError,
    InterferenceVerificationError,
    InvalidGeometry,
    InvalidParameter,
    SolverError,
)
from .maxmin import CONVERGENCE_TOL, N_RESTARTS

MODES = ("effective_sinr", "random")


@dataclass(frozen=True)
class SimConfig:
    # topology
    n_gbs: int = 8
    ring_radius_m: float = 500.0
    uav_height_m: float = 100.0
    cell_radius_m: float = 250.0
    ring_offset_deg: float = 0.0
    # air-to-ground channel
    reference_gain_db: float = -40.0
    rician_factor: float = 3.0
    antenna_count: int = 6
    antenna_spacing_wavelengths: float = 0.5
    # terrestrial links
    user_tx_power_dbm: float = 23.0
    noise_psd_dbm_hz: float = -169.0
    bandwidth_hz: float = 10e6
    terrestrial_pathloss_exponent: float = 3.5
    terrestrial_reference_gain_db: float = -30.0
    # sweep
    power_dbm_min: float = 13.0
    power_dbm_max: float = 43.0
    power_dbm_step: float = 5.0
    # trials
    n_trials: int = 100
    master_seed: int = 0
    association_mode: str = "effective_sinr"
    # overrides
    n_streams: int = None
    reverse_group_sizes: bool = False
    n_restarts: int = N_RESTARTS
    zf_tol: float = ZF_TOL
    power_tol: float = POWER_TOL
    convergence_tol: float = CONVERGENCE_TOL

    def __post_init__(self):
        problems = []
        if self.n_gbs < 1:
            problems.append("n_gbs must be >= 1")
        if self.power_dbm_min > self.power_dbm_max:
            problems.append("power_dbm_min exceeds power_dbm_max")
        if not self.power_dbm_step > 0:
            problems.append("power_dbm_step must be positive")
        if self.n_trials < 1:
            problems.append("n_trials must be >= 1")
        if self.association_mode not in MODES:
            problems.append(f"association_mode must be one of {MODES}")
        if self.n_streams is not None and not 1 <= self.n_streams <= self.n_gbs:
            problems.append("n_streams must lie in [1, n_gbs]")
        if self.n_restarts < 0:
            problems.append("n_restarts must be >= 0")
        if not self.bandwidth_hz > 0:
            problems.append("bandwidth_hz must be positive")
        if problems:
            raise ConfigError("; ".join(problems))
        try:
            self.channel_params()
            self.topology()
        except (InvalidParameter, InvalidGeometry) as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def load(cls, path):
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self):
        return dataclasses.asdict(self)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def channel_params(self, antenna_count=None):
        return ChannelModelParams(
            reference_gain_db=self.reference_gain_db,
            rician_factor=self.rician_factor,
            antenna_count=self.antenna_count if antenna_count is None else antenna_count,
            antenna_spacing_wavelengths=self.antenna_spacing_wavelengths,
        )

    def topology(self):
        return build_topology(self.n_gbs, self.ring_radius_m, self.uav_height_m,
                              self.cell_radius_m, math.radians(self.ring_offset_deg))

    def power_grid(self):
        count = int(math.floor((self.power_dbm_max - self.power_dbm_min) / self.power_dbm_step + 1e-9)) + 1
        return [self.power_dbm_min + k * self.power_dbm_step for k in range(count)]

    def stream_sizes(self):
        j = self.n_streams if self.n_streams is not None else max_dof(self.n_gbs, self.antenna_count)
        return group_sizes(self.n_gbs, j)


def trial_seed(master_seed, trial_index):
    return _seeding.derive_seed(master_seed, _seeding.TRIAL, trial_index)


# ---------------------------------------------------------------- DoF table

DOF_COLUMNS = ("M", "dof_proposed", "dof_upper_bound", "dof_lower_bound", "group_sizes")


def run_dof_experiment(config):
    """Maximum DoF for ``M = 1 .. N-1`` next to the full-cooperation and no-NOMA bounds."""
    rows = []
    for m in range(1, config.n_gbs):
        j = max_dof(config.n_gbs, m)
        rows.append({
            "M": m,
            "dof_proposed": j,
            "dof_upper_bound": m,
            "dof_lower_bound": 0,
            "group_sizes": ";".join(str(s) for s in group_sizes(config.n_gbs, j).group_sizes),
        })
    return rows


# ---------------------------------------------------------------- sweeps

SWEEP_COLUMNS = ("power_dbm", "association_mode", "mean_sum_rate_bps_hz", "std_sum_rate",
                 "per_stream_mean_rates", "n_trials", "seed", "mean_sum_rate_mbps")


@dataclass
class SweepResult:
    powers_dbm: list
    modes: tuple
    # rates[mode] has shape (n_trials, n_powers, n_streams)
    rates: dict
    master_seed: int
    bandwidth_hz: float
    rows: list = field(default_factory=list)

    def __post_init__(self):
        if not self.rows:
            self.rows = self._aggregate()

    def sum_rates(self, mode):
        """Per-trial sum rates, shape (n_trials, n_powers)."""
        return self.rates[mode].sum(axis=2)

    def mean_sum_rate(self, mode):
        return self.sum_rates(mode).mean(axis=0)

    def _aggregate(self):
        rows = []
        for k, p in enumerate(self.powers_dbm):
            for mode in self.modes:
                r = self.rates[mode][:, k, :]
                sums = r.sum(axis=1)
                n = len(sums)
                mean = float(sums.mean())
                rows.append({
                    "power_dbm": float(p),
                    "association_mode": mode,
                    "mean_sum_rate_bps_hz": mean,
                    "std_sum_rate": float(sums.std(ddof=1)) if n > 1 else 0.0,
                    "per_stream_mean_rates": ";".join(repr(float(x)) for x in r.mean(axis=0)),
                    "n_trials": n,
                    "seed": self.master_seed,
                    "mean_sum_rate_mbps": mean * self.bandwidth_hz / 1e6,
                })
        return rows

    def to_csv(self):
        return rows_to_csv(self.rows, SWEEP_COLUMNS)


def rows_to_csv(rows, columns):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
    return buf.getvalue()


def _draw(config, seed):
    topo = config.topology()
    channels = sample_channels(topo, config.channel_params(), seed)
    profile = terrestrial_profile(topo, config.user_tx_power_dbm, config.noise_psd_dbm_hz,
                                  config.bandwidth_hz, seed, config.terrestrial_pathloss_exponent,
                                  config.terrestrial_reference_gain_db)
    return topo, channels, profile


def make_association(config, mode, channels, profile, seed):
    sizes = config.stream_sizes()
    if mode == "effective_sinr":
        return assign_by_effective_sinr(channels, profile, sizes, config.reverse_group_sizes)
    if mode == "random":
        return assign_random(config.n_gbs, sizes, seed)
    raise ConfigError(f"unknown association mode {mode!r}")


def _check_budget(solution, tol, seed):
    used = float(np.sum(np.abs(solution.beams) ** 2))
    if used > solution.total_power * (1.0 + tol):
        raise SolverError(f"seed {seed}: beams use {used:.6e} W of a {solution.total_power:.6e} W budget")


def _run_trial(args):
    config, index, modes, powers_w = args
    seed = trial_seed(config.master_seed, index)
    _, channels, profile = _draw(config, seed)
    out = []
    for mode in modes:
        assoc = make_association(config, mode, channels, profile, seed)
        groups = solve_groups(channels, profile, assoc, seed, config.n_restarts, config.convergence_tol)
        per_power = []
        for p in powers_w:
            sol = allocate(groups, p)
            _check_budget(sol, config.power_tol, seed)
            report = verify_interference(channels, assoc, sol, config.zf_tol)
            if not report.passed:
                raise InterferenceVerificationError(
                    f"trial {index} (seed {seed}), mode {mode}, P={p} W: relative residual "
                    f"{report.max_relative_residual:.3e} exceeds {config.zf_tol:.1e}",
                    report=report, seed=seed)
            per_power.append(sol.rates)
        out.append(np.array(per_power))
    return out


def run_rate_sweep(config, modes=MODES, n_workers=1):
    """Mean sum rate at each power point for each association mode.

    Both modes see the same channel draw in every trial, so the comparison
    is paired. Any trial whose beams leak interference aborts the sweep.
    """
    modes = tuple(modes)
    for mode in modes:
        if mode not in MODES:
            raise ConfigError(f"unknown association mode {mode!r}")
    powers = config.power_grid()
    powers_w = [float(dbm_to_watts(p)) for p in powers]
    jobs = [(config, t, modes, powers_w) for t in range(config.n_trials)]
    if n_workers > 1:
        with ProcessPoolExecutor(n_workers) as pool:
            results = list(pool.map(_run_trial, jobs))
    else:
        results = [_run_trial(job) for job in jobs]
    rates = {mode: np.array([res[i] for res in results]) for i, mode in enumerate(modes)}
    return SweepResult(powers, modes, rates, config.master_seed, config.bandwidth_hz)


def run_single(config, seed, power_dbm, mode=None):
    """Full record of one channel draw solved at one power level."""
    mode = mode or config.association_mode
    topo, channels, profile = _draw(config, seed)
    assoc = make_association(config, mode, channels, profile, seed)
    power_w = float(dbm_to_watts(power_dbm))
    groups = solve_groups(channels, profile, assoc, seed, config.n_restarts, config.convergence_tol)
    sol = allocate(groups, power_w)
    _check_budget(sol, config.power_tol, seed)
    report = verify_interference(channels, assoc, sol, config.zf_tol)
    record = {
        "config": config.to_dict(),
        "topology": topo.to_dict(),
        "channel_seed": int(seed),
        "power_dbm": float(power_dbm) if math.isfinite(power_dbm) else None,
        "power_w": power_w,
        "association_mode": mode,
        "effective_sinr": effective_sinr(channels, profile).tolist(),
        "terrestrial_powers": profile.terrestrial_powers.tolist(),
        "noise_powers": profile.noise_powers.tolist(),
        "association": assoc.to_dict(),
        "solution": sol.to_dict(),
        "interference": report.to_dict(),
        "rates": sol.rates.tolist(),
        "sum_rate": sol.sum_rate,
        "evaluated_rates": achievable_rates(channels, profile, assoc, sol).tolist(),
    }
    if not report.passed:
        raise InterferenceVerificationError(
            f"seed {seed}: relative residual {report.max_relative_residual:.3e} exceeds {config.zf_tol:.1e}",
            report=report, seed=seed)
    return record


def rebuild(record):
    """Regenerate the channel draw, profile and association behind a record."""
    config = SimConfig.from_dict(record["config"])
    _, channels, profile = _draw(config, record["channel_seed"])
    return config, channels, profile, Association.from_dict(record["association"], config.n_gbs)
