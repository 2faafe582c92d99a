import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from uavnoma.association import (
    Association,
    assign_by_effective_sinr,
    assign_from_scores,
    assign_random,
    decode_map,
)
from uavnoma.channel import ChannelModelParams, ChannelSet, LinkNoiseProfile, effective_sinr
from uavnoma.dof import group_sizes
from uavnoma.errors import EmptyGroup, GroupOverlap, SizeSumMismatch


def _setup(gains, denominators=None):
    gains = np.asarray(gains, dtype=float)
    h = np.sqrt(gains)[:, None] * np.ones((1, 2)) / np.sqrt(2)
    cs = ChannelSet(h.astype(complex), np.ones_like(h, dtype=complex), ChannelModelParams(antenna_count=2), 0)
    den = np.ones(len(gains)) if denominators is None else np.asarray(denominators, dtype=float)
    return cs, LinkNoiseProfile(den * 0.5, den * 0.5)


def test_reported_grouping_with_gbs_4_and_7_weakest():
    # 1-based GBSs 2,3,5,6 strongest, then 1,8, and 4,7 weakest
    sinr_1based = {2: 9.0, 3: 8.5, 5: 8.0, 6: 7.5, 1: 5.0, 8: 4.5, 4: 1.0, 7: 0.5}
    gains = [sinr_1based[n] for n in range(1, 9)]
    cs, prof = _setup(gains)
    assoc = assign_by_effective_sinr(cs, prof, group_sizes(8, 2))
    one_based = [sorted(n + 1 for n in g) for g in assoc.groups]
    assert one_based == [[2, 3, 5, 6], [1, 4, 7, 8]]


def test_ties_broken_by_index():
    cs, prof = _setup(np.ones(6))
    assoc = assign_by_effective_sinr(cs, prof, (2, 2, 2))
    assert assoc.groups == ((0, 1), (2, 3), (4, 5))


def test_sorted_blocking():
    cs, prof = _setup([2.0, 4.0, 1.0, 3.0])
    assoc = assign_by_effective_sinr(cs, prof, (2, 2))
    assert assoc.groups == ((1, 3), (0, 2))


def test_reverse_sizes_gives_larger_groups_to_strongest():
    cs, prof = _setup([5.0, 4.0, 3.0, 2.0, 1.0])
    assert assign_by_effective_sinr(cs, prof, group_sizes(5, 2)).groups == ((0, 1), (2, 3, 4))
    assert assign_by_effective_sinr(cs, prof, group_sizes(5, 2), reverse_sizes=True).groups == ((0, 1, 2), (3, 4))


def test_size_mismatch():
    cs, prof = _setup([1.0, 2.0, 3.0])
    with pytest.raises(SizeSumMismatch):
        assign_by_effective_sinr(cs, prof, (1, 1))
    with pytest.raises(SizeSumMismatch):
        assign_random(3, (2, 2), 0)


def test_random_is_deterministic_and_valid():
    a = assign_random(8, group_sizes(8, 2), 42)
    b = assign_random(8, group_sizes(8, 2), 42)
    assert a == b
    assert sorted(n for g in a.groups for n in g) == list(range(8))
    assert [len(g) for g in a.groups] == [4, 4]


def test_random_can_produce_the_contiguous_split():
    target = ((0, 1, 2, 3), (4, 5, 6, 7))
    assert any(assign_random(8, (4, 4), s).groups == target for s in range(500))


def test_random_covers_many_partitions():
    seen = {assign_random(8, (4, 4), s).groups for s in range(2000)}
    # 70 ordered splits of 8 into two labelled blocks of 4
    assert len(seen) == 70


def test_decode_map_inverse():
    assoc = Association(5, ((0, 1), (3,)))
    assert decode_map(assoc, 0) == 0
    assert decode_map(assoc, 3) == 1
    assert decode_map(assoc, 2) is None
    for j, g in enumerate(assoc.groups):
        for n in g:
            assert decode_map(assoc, n) == j


def test_association_invariants_enforced():
    with pytest.raises(GroupOverlap):
        Association(4, ((0, 1), (1, 2)))
    with pytest.raises(EmptyGroup):
        Association(4, ((0,), ()))


def test_association_json_shape():
    assoc = Association(4, ((0, 2), (1, 3)))
    assert assoc.to_dict() == {"groups": [[0, 2], [1, 3]]}
    assert Association.from_dict(assoc.to_dict(), 4) == assoc


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(1e-3, 1e3), min_size=2, max_size=10), st.data())
def test_blocks_are_sorted_by_sinr(scores, data):
    n = len(scores)
    j = data.draw(st.integers(1, n))
    assoc = assign_from_scores(scores, group_sizes(n, j))
    s = np.asarray(scores)
    for a in range(j):
        for b in range(a + 1, j):
            assert s[list(assoc.groups[a])].min() >= s[list(assoc.groups[b])].max()


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000), st.floats(1e-6, 1e6))
def test_scale_invariance(seed, factor):
    rng = np.random.default_rng(seed)
    n = 8
    h = rng.standard_normal((n, 3)) + 1j * rng.standard_normal((n, 3))
    cs = ChannelSet(h, np.ones_like(h), ChannelModelParams(antenna_count=3), 0)
    q, s = rng.uniform(0, 1, n), rng.uniform(0.1, 1, n)
    base = assign_by_effective_sinr(cs, LinkNoiseProfile(q, s), (4, 4))
    scaled = assign_by_effective_sinr(cs, LinkNoiseProfile(q * factor, s * factor), (4, 4))
    assert base == scaled
