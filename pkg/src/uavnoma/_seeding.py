"""Deterministic seed derivation.

Every random stream is keyed by a tuple of integers so that parallel and
serial runs draw the same numbers regardless of scheduling order.
"""

import numpy as np

# stream tags
CHANNEL = 1
TERRESTRIAL = 2
ASSOCIATION = 3
SOLVER = 4
TRIAL = 5


def rng(seed, *key):
    """Return a Generator for the stream identified by ``(seed, *key)``."""
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key)))


def derive_seed(seed, *key):
    """Derive a 64-bit integer seed from ``seed`` and an integer key path."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
