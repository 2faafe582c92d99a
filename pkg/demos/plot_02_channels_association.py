"""
Rician channels and effective-SINR association
==============================================

Draw one channel realisation for the default 8-GBS ring, rank the GBSs by
effective SINR ``||h_n||^2 / (Q_n + sigma^2)`` and cut the ranking into
contiguous decoding groups.
"""

import numpy as np

from uavnoma import (
    ChannelModelParams,
    assign_by_effective_sinr,
    assign_random,
    build_topology,
    effective_sinr,
    group_sizes,
    max_dof,
    sample_channels,
    terrestrial_profile,
)
from uavnoma.channel import watts_to_dbm

topology = build_topology(n_gbs=8, ring_radius_m=500.0, uav_height_m=100.0)
params = ChannelModelParams(reference_gain_db=-40.0, rician_factor=3.0, antenna_count=6)
channels = sample_channels(topology, params, seed=11)
profile = terrestrial_profile(topology, user_tx_power_dbm=23.0, noise_psd_dbm_hz=-169.0,
                              bandwidth_hz=10e6, seed=11)

# %%
# Terrestrial interference dominates the -99 dBm noise floor, so the
# ranking is driven mostly by where each terrestrial user happens to sit.
print("Q_n [dBm]       ", np.round(watts_to_dbm(profile.terrestrial_powers), 1))
print("eff. SINR [dB]  ", np.round(10 * np.log10(effective_sinr(channels, profile)), 1))

# %%
# Two streams of four GBSs each: strongest four together, weakest four together.
sizes = group_sizes(8, max_dof(8, 6))
print("effective-SINR groups:", assign_by_effective_sinr(channels, profile, sizes).groups)
print("random groups:        ", assign_random(8, sizes, seed=11).groups)
