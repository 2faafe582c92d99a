"""
Degrees of freedom of NOMA-assisted ZF multi-beam uplink.

With ``N`` GBSs and ``M < N`` UAV antennas, stream ``j`` decoded by the
group ``L_j`` must be nulled at the ``N - |L_j|`` other GBSs, so a ZF beam
exists iff ``M > N - |L_j|``. The largest stream count meeting this for
every group is ``floor(N / (N - M + 1))``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    AssumptionViolated,
    EmptyGroup,
    GroupOverlap,
    InvalidStreamCount,
    TooLargeForOracle,
)

#: singular values below this fraction of the largest are treated as zero
NULLITY_RTOL = 1e-9

ORACLE_MAX_GBS = 10


@dataclass(frozen=True)
class DofResult:
    max_dof: int
    group_sizes: tuple
    split_index: int  # number of leading floor-sized groups


def max_dof(n_gbs, n_antennas):
    """Maximum number of interference-free streams, ``floor(N/(N-M+1))``.

    Raises
    ------
    AssumptionViolated
        If ``n_gbs <= n_antennas`` or ``n_antennas < 1``.
    """
    if n_antennas < 1 or n_gbs <= n_antennas:
        raise AssumptionViolated(f"requires N > M >= 1, got N={n_gbs}, M={n_antennas}")
    return n_gbs // (n_gbs - n_antennas + 1)


def group_sizes(n_gbs, n_streams):
    """Split ``n_gbs`` into ``n_streams`` near-equal groups.

    The first ``split_index`` groups have ``floor(N/J)`` members and the
    rest ``ceil(N/J)``; when ``J`` divides ``N`` all groups are equal and
    ``split_index == J``.
    """
    if not 1 <= n_streams <= n_gbs:
        raise InvalidStreamCount(f"need 1 <= J <= N, got J={n_streams}, N={n_gbs}")
    small, extra = divmod(n_gbs, n_streams)
    split = n_streams - extra
    sizes = (small,) * split + (small + 1,) * extra
    return DofResult(n_streams, sizes, split)


def dof_partition(n_gbs, n_antennas):
    """``group_sizes`` evaluated at the maximum DoF."""
    return group_sizes(n_gbs, max_dof(n_gbs, n_antennas))


def contiguous_groups(sizes):
    """Blocks ``[0..s0-1], [s0..s0+s1-1], ...`` for the given sizes."""
    bounds = np.cumsum((0,) + tuple(sizes))
    return [list(range(bounds[i], bounds[i + 1])) for i in range(len(sizes))]


def _check_groups(groups, n_gbs):
    seen = set()
    for g in groups:
        if len(g) == 0:
            raise EmptyGroup("every group must contain at least one GBS")
        for n in g:
            if not 0 <= n < n_gbs:
                raise IndexError(f"GBS index {n} out of range for {n_gbs} GBSs")
            if n in seen:
                raise GroupOverlap(f"GBS {n} appears in more than one group")
            seen.add(n)


def complement_nullity(channels, group, rtol=NULLITY_RTOL):
    """Numerical nullity of the stacked channels of all GBSs outside ``group``."""
    h = channels.channels
    outside = [n for n in range(h.shape[0]) if n not in set(group)]
    m = h.shape[1]
    if not outside:
        return m
    s = np.linalg.svd(h[outside].conj(), compute_uv=False)
    if s[0] == 0:
        return m
    return m - int(np.sum(s > rtol * s[0]))


@dataclass(frozen=True)
class FeasibilityCertificate:
    """Outcome of the ZF dimension count for a grouping.

    Truthy iff both the counting rule and the numerical null-space check
    pass for every group.
    """

    counting_ok: tuple
    numerical_ok: tuple
    nullities: tuple
    expected_nullities: tuple

    @property
    def feasible(self):
        return all(self.counting_ok) and all(self.numerical_ok)

    def __bool__(self):
        return self.feasible


def feasibility_certificate(channels, groups, rtol=NULLITY_RTOL):
    n, m = channels.channels.shape
    _check_groups(groups, n)
    counting, numerical, nullities, expected = [], [], [], []
    for g in groups:
        need = m - (n - len(g))
        nullity = complement_nullity(channels, g, rtol)
        counting.append(need >= 1)
        numerical.append(nullity >= 1)
        nullities.append(nullity)
        expected.append(max(need, 0))
    return FeasibilityCertificate(tuple(counting), tuple(numerical), tuple(nullities), tuple(expected))


def size_assignments(total, n_groups, min_size=1):
    """Yield nonincreasing tuples of ``n_groups`` sizes >= ``min_size`` summing to at most ``total``."""
    def rec(remaining, parts, cap):
        if parts == 0:
            yield ()
            return
        for s in range(min(cap, remaining - (parts - 1) * min_size), min_size - 1, -1):
            for rest in rec(remaining - s, parts - 1, s):
                yield (s,) + rest

    yield from rec(total, n_groups, total)


def dof_oracle(n_gbs, n_antennas):
    """Maximum DoF by exhaustive enumeration of group-size assignments.

    Independent of the closed form: for every candidate ``J`` from
    ``min(M, N)`` down to 1, every multiset of ``J`` disjoint nonempty group
    sizes with total at most ``N`` is checked against ``|L_j| >= N - M + 1``.
    """
    if n_gbs > ORACLE_MAX_GBS:
        raise TooLargeForOracle(f"oracle limited to N <= {ORACLE_MAX_GBS}, got {n_gbs}")
    if n_antennas < 1 or n_gbs <= n_antennas:
        raise AssumptionViolated(f"requires N > M >= 1, got N={n_gbs}, M={n_antennas}")
    need = n_gbs - n_antennas + 1
    for j in range(min(n_antennas, n_gbs), 0, -1):
        for sizes in size_assignments(n_gbs, j):
            # uncovered GBSs also impose ZF equations, so the count is always N - |L_j|
            if all(s >= need for s in sizes):
                return j
    return 0
