import numpy as np
import pytest

from conftest import random_unit_directions
from uavnoma.maxmin import maxmin_direction, maxmin_objective


def sampled_best(g, c, rng, count=200_000):
    d = g.shape[1]
    return maxmin_objective(g, c, random_unit_directions(rng, d, count)).max()


def test_singleton_is_matched_filter():
    g = np.array([[1 + 1j, 2 - 0.5j, 0.3j]])
    res = maxmin_direction(g, [2.0])
    np.testing.assert_allclose(res.direction, g[0] / np.linalg.norm(g[0]))
    assert res.gamma == pytest.approx(np.linalg.norm(g) ** 2 / 2.0)


def test_duplicate_constraint_is_singleton():
    g = np.array([[1 + 1j, 2 - 0.5j], [1 + 1j, 2 - 0.5j]])
    res = maxmin_direction(g, [2.0, 2.0])
    assert res.gamma == pytest.approx(np.linalg.norm(g[0]) ** 2 / 2.0, rel=1e-9)


def test_dimension_one():
    res = maxmin_direction(np.array([[2.0], [1j]]), [1.0, 4.0])
    assert res.gamma == pytest.approx(0.25)


def test_degenerate_group_flagged():
    res = maxmin_direction(np.zeros((3, 2)), [1.0, 1.0, 1.0])
    assert res.degenerate and res.gamma == 0.0
    assert np.linalg.norm(res.direction) == pytest.approx(1.0)


def test_orthogonal_pair_closed_form():
    # g1 = e1, g2 = e2: best is equal split, min = 1/2
    res = maxmin_direction(np.eye(2), [1.0, 1.0])
    assert res.gamma == pytest.approx(0.5, rel=1e-4)


@pytest.mark.parametrize("seed", range(12))
def test_beats_dense_sampling(seed):
    rng = np.random.default_rng(seed)
    d, k = 2 + seed % 2, 2 + seed % 3
    g = rng.standard_normal((k, d)) + 1j * rng.standard_normal((k, d))
    c = rng.uniform(0.5, 2.0, k)
    res = maxmin_direction(g, c, seed=seed)
    assert res.gamma >= 0.98 * sampled_best(g, c, rng)


@pytest.mark.parametrize("seed", range(5))
def test_self_consistent_and_unit(seed):
    rng = np.random.default_rng(100 + seed)
    g = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
    c = rng.uniform(0.5, 2.0, 4)
    res = maxmin_direction(g, c, seed=seed)
    assert np.linalg.norm(res.direction) == pytest.approx(1.0, abs=1e-12)
    assert res.gamma == maxmin_objective(g, c, res.direction)


def test_deterministic_under_seed():
    rng = np.random.default_rng(3)
    g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    a = maxmin_direction(g, np.ones(3), seed=9)
    b = maxmin_direction(g, np.ones(3), seed=9)
    assert a.direction.tobytes() == b.direction.tobytes()


def test_scale_free():
    rng = np.random.default_rng(4)
    g = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    c = rng.uniform(0.5, 2.0, 3)
    a = maxmin_direction(g, c, seed=1)
    b = maxmin_direction(g * 1e-5, c * 1e-10, seed=1)
    assert b.gamma == pytest.approx(a.gamma, rel=1e-6)
