"""Stream-to-GBS decoding groups."""

from dataclasses import dataclass, field

import numpy as np

from . import _seeding
from .channel import effective_sinr
from .dof import DofResult, _check_groups
from .errors import SizeSumMismatch


@dataclass(frozen=True)
class Association:
    """Disjoint decoding groups and their per-GBS inverse.

    Attributes
    ----------
    n_gbs : int
    groups : tuple of tuple of int
        ``groups[j]`` lists the GBSs (0-based) that decode stream ``j``.
    decode_map : tuple
        ``decode_map[n]`` is the stream decoded by GBS ``n``, or None.
    """

    n_gbs: int
    groups: tuple
    decode_map: tuple = field(init=False)

    def __post_init__(self):
        groups = tuple(tuple(int(n) for n in g) for g in self.groups)
        _check_groups(groups, self.n_gbs)
        inverse = [None] * self.n_gbs
        for j, g in enumerate(groups):
            for n in g:
                inverse[n] = j
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "decode_map", tuple(inverse))

    @property
    def n_streams(self):
        return len(self.groups)

    def outside(self, stream):
        """GBSs that must be nulled for ``stream``."""
        members = set(self.groups[stream])
        return [n for n in range(self.n_gbs) if n not in members]

    def to_dict(self):
        return {"groups": [list(g) for g in self.groups]}

    @classmethod
    def from_dict(cls, data, n_gbs):
        return cls(n_gbs, tuple(tuple(g) for g in data["groups"]))


def _sizes(sizes):
    return tuple(sizes.group_sizes) if isinstance(sizes, DofResult) else tuple(sizes)


def _block(order, sizes, n_gbs):
    if sum(sizes) != n_gbs:
        raise SizeSumMismatch(f"group sizes {sizes} sum to {sum(sizes)}, expected {n_gbs}")
    bounds = np.cumsum((0,) + sizes)
    groups = tuple(tuple(sorted(int(n) for n in order[bounds[i]:bounds[i + 1]])) for i in range(len(sizes)))
    return Association(n_gbs, groups)


def order_by_effective_sinr(values):
    """GBS indices sorted by nonincreasing value, ties by ascending index."""
    values = np.asarray(values, dtype=float)
    # lexsort sorts by the last key first
    return np.lexsort((np.arange(len(values)), -values))


def assign_by_effective_sinr(channels, profile, sizes, reverse_sizes=False):
    """Fill groups with contiguous blocks of GBSs ranked by effective SINR.

    The strongest GBSs go to the first group. Sizes are consumed in the
    order given (floor-sized groups first for a ``DofResult``); set
    ``reverse_sizes`` to hand the larger groups to the strongest GBSs.
    """
    sizes = _sizes(sizes)
    if reverse_sizes:
        sizes = sizes[::-1]
    return assign_from_scores(effective_sinr(channels, profile), sizes)


def assign_from_scores(scores, sizes):
    """Contiguous-block association for precomputed effective SINRs."""
    order = order_by_effective_sinr(scores)
    return _block(order, _sizes(sizes), len(order))


def assign_random(n_gbs, sizes, seed):
    """Random benchmark: a seeded uniform permutation cut into the given sizes."""
    order = _seeding.rng(seed, _seeding.ASSOCIATION).permutation(n_gbs)
    return _block(order, _sizes(sizes), n_gbs)


def decode_map(association, gbs_index):
    if not 0 <= gbs_index < association.n_gbs:
        raise IndexError(f"gbs_index {gbs_index} out of range")
    return association.decode_map[gbs_index]
