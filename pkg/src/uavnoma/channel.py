"""
Topology, Rician air-to-ground channels and terrestrial link powers.

The UAV carries a uniform linear array along the x-axis. Each GBS is a
single effective receive antenna on the ground plane (height 0). Channels
follow the Rician model

    h_n = sqrt(tau0 / d_n^2) * (sqrt(K/(K+1)) * a_n + sqrt(1/(K+1)) * g_n)

with ``a_n`` the LoS steering vector and ``g_n ~ CN(0, I)``.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _seeding
from .errors import InvalidGeometry, InvalidParameter


def db_to_linear(value_db):
    return 10.0 ** (np.asarray(value_db, dtype=float) / 10.0)


def dbm_to_watts(value_dbm):
    return 10.0 ** ((np.asarray(value_dbm, dtype=float) - 30.0) / 10.0)


def watts_to_dbm(value_w):
    return 10.0 * np.log10(np.asarray(value_w, dtype=float)) + 30.0


@dataclass(frozen=True)
class ChannelModelParams:
    """Parameters of the Rician air-to-ground channel.

    Attributes
    ----------
    reference_gain_db : float
        Channel power gain at the 1 m reference distance, in dB.
    rician_factor : float
        Ratio of LoS to scattered power (>= 0).
    antenna_count : int
        Number of UAV antennas M.
    antenna_spacing_wavelengths : float
        Element spacing of the linear array.
    """

    reference_gain_db: float = -40.0
    rician_factor: float = 3.0
    antenna_count: int = 6
    antenna_spacing_wavelengths: float = 0.5

    def __post_init__(self):
        if not self.rician_factor >= 0:
            raise InvalidParameter(f"rician_factor must be >= 0, got {self.rician_factor}")
        if int(self.antenna_count) != self.antenna_count or self.antenna_count < 1:
            raise InvalidParameter(f"antenna_count must be a positive integer, got {self.antenna_count}")
        if not self.antenna_spacing_wavelengths > 0:
            raise InvalidParameter("antenna_spacing_wavelengths must be positive")

    @property
    def reference_gain(self):
        return float(db_to_linear(self.reference_gain_db))


@dataclass(frozen=True)
class NetworkTopology:
    """UAV and GBS placement. Distances are derived on construction."""

    uav_position: np.ndarray
    gbs_positions: np.ndarray
    cell_radius_m: float = 250.0
    distances: np.ndarray = field(init=False)

    def __post_init__(self):
        uav = np.asarray(self.uav_position, dtype=float).reshape(3)
        gbs = np.asarray(self.gbs_positions, dtype=float).reshape(-1, 2)
        if gbs.shape[0] < 1:
            raise InvalidGeometry("at least one GBS is required")
        if not self.cell_radius_m > 0:
            raise InvalidGeometry("cell_radius_m must be positive")
        lifted = np.column_stack([gbs, np.zeros(len(gbs))])
        dist = np.linalg.norm(lifted - uav, axis=1)
        if np.any(dist <= 0):
            raise InvalidGeometry("UAV coincides with a GBS")
        object.__setattr__(self, "uav_position", uav)
        object.__setattr__(self, "gbs_positions", gbs)
        object.__setattr__(self, "distances", dist)

    @property
    def n_gbs(self):
        return self.gbs_positions.shape[0]

    @property
    def height(self):
        return float(self.uav_position[2])

    def to_dict(self):
        return {
            "uav_position": self.uav_position.tolist(),
            "gbs_positions": self.gbs_positions.tolist(),
            "distances": self.distances.tolist(),
            "cell_radius_m": self.cell_radius_m,
        }


@dataclass(frozen=True)
class ChannelSet:
    channels: np.ndarray        # (N, M) complex, row n is h_n
    los_components: np.ndarray  # (N, M) complex, row n is the LoS steering vector
    params: ChannelModelParams
    seed: int

    @property
    def n_gbs(self):
        return self.channels.shape[0]

    @property
    def n_antennas(self):
        return self.channels.shape[1]

    def scaled(self, factor):
        """Copy with every channel multiplied by ``factor``."""
        return ChannelSet(self.channels * factor, self.los_components, self.params, self.seed)


@dataclass(frozen=True)
class LinkNoiseProfile:
    """Per-GBS terrestrial signal power Q_n and noise power, both in watts."""

    terrestrial_powers: np.ndarray
    noise_powers: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.terrestrial_powers, dtype=float).reshape(-1)
        s = np.asarray(self.noise_powers, dtype=float).reshape(-1)
        if q.shape != s.shape:
            raise InvalidParameter("terrestrial_powers and noise_powers differ in length")
        if np.any(q < 0) or np.any(s <= 0):
            raise InvalidParameter("need Q_n >= 0 and noise power > 0")
        object.__setattr__(self, "terrestrial_powers", q)
        object.__setattr__(self, "noise_powers", s)

    @property
    def denominators(self):
        """Q_n + sigma_n^2 for every GBS."""
        return self.terrestrial_powers + self.noise_powers


def build_topology(n_gbs, ring_radius_m, uav_height_m, cell_radius_m=250.0, angle_offset_rad=0.0):
    """Place ``n_gbs`` GBSs evenly on a ring centred below the UAV.

    GBS ``k`` sits at angle ``angle_offset_rad + 2*pi*k/n_gbs``. With the
    default zero offset the ring is mirror-symmetric about the array axis,
    so GBS pairs at angles +/-theta share one LoS steering vector.
    """
    if n_gbs < 1 or not ring_radius_m > 0 or not uav_height_m > 0:
        raise InvalidGeometry(
            f"need n_gbs >= 1 and positive radius/height, got {n_gbs}, {ring_radius_m}, {uav_height_m}"
        )
    angles = angle_offset_rad + 2.0 * np.pi * np.arange(n_gbs) / n_gbs
    gbs = ring_radius_m * np.column_stack([np.cos(angles), np.sin(angles)])
    return NetworkTopology(np.array([0.0, 0.0, uav_height_m]), gbs, cell_radius_m)


def los_steering(topology, gbs_index, params):
    """LoS steering vector from the UAV array towards GBS ``gbs_index``.

    Entry ``m`` is ``exp(-2j*pi*spacing*m*cos(phi))`` with ``phi`` the angle
    between the array axis (x) and the UAV-to-GBS direction.
    """
    if not 0 <= gbs_index < topology.n_gbs:
        raise IndexError(f"gbs_index {gbs_index} out of range for {topology.n_gbs} GBSs")
    target = np.append(topology.gbs_positions[gbs_index], 0.0)
    direction = target - topology.uav_position
    cos_phi = direction[0] / np.linalg.norm(direction)
    m = np.arange(params.antenna_count)
    return np.exp(-2j * np.pi * params.antenna_spacing_wavelengths * m * cos_phi)


def sample_channels(topology, params, seed):
    """Draw one Rician channel realisation for every GBS.

    The scattered component of GBS ``n`` comes from its own stream keyed on
    ``(seed, n)``, so results do not depend on evaluation order.
    """
    k = params.rician_factor
    n, m = topology.n_gbs, params.antenna_count
    los = np.empty((n, m), dtype=complex)
    h = np.empty((n, m), dtype=complex)
    if np.isinf(k):
        w_los, w_nlos = 1.0, 0.0
    else:
        w_los, w_nlos = np.sqrt(k / (k + 1.0)), np.sqrt(1.0 / (k + 1.0))
    amplitude = np.sqrt(params.reference_gain) / topology.distances
    for idx in range(n):
        los[idx] = los_steering(topology, idx, params)
        g = _seeding.rng(seed, _seeding.CHANNEL, idx).standard_normal((2, m))
        scattered = (g[0] + 1j * g[1]) / np.sqrt(2.0)
        h[idx] = amplitude[idx] * (w_los * los[idx] + w_nlos * scattered)
    return ChannelSet(h, los, params, int(seed))


def ground_path_gain(distance_m, exponent=3.5, reference_gain_db=-30.0):
    """Log-distance terrestrial path gain; distances below 1 m are clamped."""
    d = np.maximum(np.asarray(distance_m, dtype=float), 1.0)
    return db_to_linear(reference_gain_db) * d ** (-exponent)


def terrestrial_profile(topology, user_tx_power_dbm, noise_psd_dbm_hz, bandwidth_hz, seed,
                        pathloss_exponent=3.5, reference_gain_db=-30.0):
    """Received terrestrial-user power and noise power at every GBS.

    One user per cell is dropped uniformly in a disk of radius
    ``topology.cell_radius_m`` around its GBS.
    """
    if not bandwidth_hz > 0:
        raise InvalidParameter("bandwidth_hz must be positive")
    n = topology.n_gbs
    distances = np.empty(n)
    for idx in range(n):
        u = _seeding.rng(seed, _seeding.TERRESTRIAL, idx).random()
        distances[idx] = topology.cell_radius_m * np.sqrt(u)
    q = dbm_to_watts(user_tx_power_dbm) * ground_path_gain(distances, pathloss_exponent, reference_gain_db)
    noise = dbm_to_watts(noise_psd_dbm_hz) * bandwidth_hz
    return LinkNoiseProfile(q, np.full(n, float(noise)))


def effective_sinr(channels, profile, gbs_index=None):
    """||h_n||^2 / (Q_n + sigma_n^2); all GBSs at once when the index is None."""
    gains = np.sum(np.abs(channels.channels) ** 2, axis=1)
    values = gains / profile.denominators
    if gbs_index is None:
        return values
    if not 0 <= gbs_index < len(values):
        raise IndexError(f"gbs_index {gbs_index} out of range")
    return float(values[gbs_index])
