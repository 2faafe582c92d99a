"""
Zero-forcing multi-group multicast beamforming for a fixed association.

Each stream is confined to the null space of the channels of the GBSs that
do not decode it, so nobody outside its group sees it and everybody inside
can cancel it after decoding. Inside that null space the stream needs a
max-min multicast direction; powers are then water-filled across streams.
The direction problem does not depend on the power budget, so a
``GroupSolution`` list can be reused across a power sweep.
"""

from dataclasses import dataclass

import numpy as np

from . import _seeding
from .dof import NULLITY_RTOL
from .errors import InfeasibleZF, InvalidPower, RankDeficiency
from .maxmin import CONVERGENCE_TOL, N_RESTARTS, maxmin_direction
from .waterfill import waterfill

ZF_TOL = 1e-10
POWER_TOL = 1e-9
#: reduced channels below this fraction of the strongest channel count as zero
DEGENERATE_RTOL = 1e-12


@dataclass(frozen=True)
class NullSpaceBasis:
    basis: np.ndarray  # (M, M - complement_rank), orthonormal columns
    complement_rank: int


def null_space_basis(channels, association, stream, rtol=NULLITY_RTOL):
    """Orthonormal basis of the vectors every non-member GBS of ``stream`` cannot see.

    Raises
    ------
    InfeasibleZF
        If ``M <= N - |group|``.
    RankDeficiency
        If the complement channels are numerically rank deficient, so the
        null space is larger than counting predicts.
    """
    h = channels.channels
    m = h.shape[1]
    outside = association.outside(stream)
    r = len(outside)
    if m <= r:
        raise InfeasibleZF(f"stream {stream}: {r} ZF equations but only {m} antennas")
    if r == 0:
        return NullSpaceBasis(np.eye(m, dtype=complex), 0)
    # rows are h_n^H, so H w = 0 means h_n^H w = 0
    _, s, vh = np.linalg.svd(h[outside].conj(), full_matrices=True)
    rank = int(np.sum(s > rtol * s[0])) if s[0] > 0 else 0
    if rank != r:
        raise RankDeficiency(f"stream {stream}: complement rank {rank}, expected {r}")
    return NullSpaceBasis(vh[r:].conj().T, r)


@dataclass(frozen=True)
class GroupSolution:
    basis: np.ndarray
    direction: np.ndarray  # unit vector in reduced coordinates
    gamma: float           # max-min SINR per unit transmit power
    degenerate: bool


@dataclass(frozen=True)
class BeamformingSolution:
    beams: np.ndarray          # (J, M)
    reduced_beams: tuple       # J vectors of varying length
    rates: np.ndarray
    unit_gammas: np.ndarray
    powers: np.ndarray
    total_power: float
    degenerate: tuple = ()

    @property
    def sum_rate(self):
        return float(np.sum(self.rates))

    def to_dict(self):
        def interleave(v):
            v = np.asarray(v, dtype=complex)
            return np.column_stack([v.real, v.imag]).reshape(-1).tolist()

        return {
            "beams": [interleave(w) for w in self.beams],
            "reduced_beams": [interleave(w) for w in self.reduced_beams],
            "rates": self.rates.tolist(),
            "unit_gammas": self.unit_gammas.tolist(),
            "powers": self.powers.tolist(),
            "total_power": self.total_power,
            "degenerate": list(self.degenerate),
        }

    @classmethod
    def from_dict(cls, data):
        def deinterleave(x):
            x = np.asarray(x, dtype=float).reshape(-1, 2)
            return x[:, 0] + 1j * x[:, 1]

        return cls(
            beams=np.array([deinterleave(w) for w in data["beams"]]),
            reduced_beams=tuple(deinterleave(w) for w in data["reduced_beams"]),
            rates=np.asarray(data["rates"], dtype=float),
            unit_gammas=np.asarray(data["unit_gammas"], dtype=float),
            powers=np.asarray(data["powers"], dtype=float),
            total_power=float(data["total_power"]),
            degenerate=tuple(data.get("degenerate", ())),
        )


def solve_groups(channels, profile, association, seed=0, n_restarts=N_RESTARTS, tol=CONVERGENCE_TOL):
    """ZF basis and unit-power max-min direction for every stream."""
    h = channels.channels
    denom = profile.denominators
    zero_tol = DEGENERATE_RTOL * np.linalg.norm(h, axis=1).max()
    out = []
    for j, members in enumerate(association.groups):
        ns = null_space_basis(channels, association, j)
        members = list(members)
        # row n is g_n = Y^H h_n, so h_n^H (Y u) = g_n^H u
        g = h[members] @ ns.basis.conj()
        res = maxmin_direction(g, denom[members], seed=_seeding.derive_seed(seed, _seeding.SOLVER, j),
                               n_restarts=n_restarts, tol=tol, zero_tol=zero_tol)
        out.append(GroupSolution(ns.basis, res.direction, res.gamma, res.degenerate))
    return out


def allocate(groups, total_power):
    """Water-fill ``total_power`` over precomputed group directions."""
    if not total_power >= 0:
        raise InvalidPower(f"total_power must be >= 0, got {total_power}")
    gammas = np.array([g.gamma for g in groups])
    powers, _ = waterfill(gammas, total_power)
    reduced = tuple(np.sqrt(p) * g.direction for p, g in zip(powers, groups))
    beams = np.array([g.basis @ w for g, w in zip(groups, reduced)])
    rates = np.log2(1.0 + gammas * powers)
    return BeamformingSolution(beams, reduced, rates, gammas, powers, float(total_power),
                               tuple(g.degenerate for g in groups))


def solve_sum_rate(channels, profile, association, total_power, seed=0, n_restarts=N_RESTARTS,
                   tol=CONVERGENCE_TOL):
    """Sum-rate ZF beamformer for a fixed association.

    Per stream: null-space basis, max-min direction, then water-filling
    across streams. ``w_j = sqrt(p_j) Y_j u_j`` and
    ``R_j = log2(1 + gamma_j p_j)`` is the bottleneck rate of group ``j``.
    """
    if not total_power >= 0:
        raise InvalidPower(f"total_power must be >= 0, got {total_power}")
    return allocate(solve_groups(channels, profile, association, seed, n_restarts, tol), total_power)


@dataclass(frozen=True)
class InterferenceReport:
    residuals: np.ndarray
    max_relative_residual: float
    tolerance: float = ZF_TOL

    @property
    def passed(self):
        return self.max_relative_residual <= self.tolerance

    def to_dict(self):
        return {
            "residuals": self.residuals.tolist(),
            "max_relative_residual": self.max_relative_residual,
            "tolerance": self.tolerance,
            "passed": bool(self.passed),
        }


def received_powers(channels, beams):
    """``|h_n^H w_j|^2`` as an (N, J) array."""
    beams = np.atleast_2d(beams)
    return np.abs(channels.channels.conj() @ beams.T) ** 2


def verify_interference(channels, association, solution, tol=ZF_TOL):
    """Interference left at each GBS after it cancels the stream it decodes.

    The relative residual normalises by ``P * max_m ||h_m||^2``, the most
    any GBS could receive.
    """
    rx = received_powers(channels, solution.beams)
    mask = np.ones_like(rx, dtype=bool)
    for n, j in enumerate(association.decode_map):
        if j is not None:
            mask[n, j] = False
    residuals = np.where(mask, rx, 0.0).sum(axis=1)
    ceiling = solution.total_power * np.max(np.sum(np.abs(channels.channels) ** 2, axis=1))
    if ceiling > 0:
        rel = float(residuals.max() / ceiling)
    else:
        rel = 0.0 if residuals.max() == 0 else float("inf")
    return InterferenceReport(residuals, rel, tol)


def achievable_rates(channels, profile, association, solution):
    """Per-stream rate with every other stream counted as interference.

    For member ``n`` of group ``j`` the SINR is
    ``|h_n^H w_j|^2 / (sum_{i != j} |h_n^H w_i|^2 + Q_n + sigma_n^2)``; the
    stream rate is the minimum ``log2(1 + SINR)`` over its group.
    """
    rx = received_powers(channels, solution.beams)
    denom = profile.denominators
    rates = np.empty(association.n_streams)
    for j, members in enumerate(association.groups):
        members = list(members)
        signal = rx[members, j]
        interference = rx[members].sum(axis=1) - signal
        rates[j] = np.min(np.log2(1.0 + signal / (interference + denom[members])))
    return rates
