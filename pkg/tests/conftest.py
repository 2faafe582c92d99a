import numpy as np
import pytest

from uavnoma.channel import ChannelModelParams, build_topology, sample_channels, terrestrial_profile

ACCEPTANCE_LINES = []


@pytest.fixture
def ring_topology():
    return build_topology(8, 500.0, 100.0)


@pytest.fixture
def draw(ring_topology):
    """Channels and link profile for the 8-GBS, 6-antenna setup at a given seed."""
    def make(seed, antenna_count=6, rician_factor=3.0):
        params = ChannelModelParams(antenna_count=antenna_count, rician_factor=rician_factor)
        channels = sample_channels(ring_topology, params, seed)
        profile = terrestrial_profile(ring_topology, 23.0, -169.0, 10e6, seed)
        return channels, profile

    return make


def random_unit_directions(rng, dim, count):
    v = rng.standard_normal((2, dim, count))
    v = v[0] + 1j * v[1]
    return v / np.linalg.norm(v, axis=0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
