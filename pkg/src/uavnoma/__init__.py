"""NOMA-assisted multi-beam UAV uplink with zero-forcing interference protection."""

from .association import Association, assign_by_effective_sinr, assign_random, decode_map
from .beamforming import (
    BeamformingSolution,
    InterferenceReport,
    NullSpaceBasis,
    achievable_rates,
    null_space_basis,
    solve_sum_rate,
    verify_interference,
)
from .channel import (
    ChannelModelParams,
    ChannelSet,
    LinkNoiseProfile,
    NetworkTopology,
    build_topology,
    effective_sinr,
    los_steering,
    sample_channels,
    terrestrial_profile,
)
from .dof import DofResult, dof_oracle, feasibility_certificate, group_sizes, max_dof
from .maxmin import maxmin_direction
from .simulation import SimConfig, run_dof_experiment, run_rate_sweep, run_single
from .waterfill import waterfill

__version__ = "0.1.0"
