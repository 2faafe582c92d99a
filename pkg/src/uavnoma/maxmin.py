"""
Single-group max-min multicast direction on the complex unit sphere.

Solves ``max_{||u||=1} min_n |g_n^H u|^2 / c_n`` by Riemannian gradient
ascent on a log-sum-exp smoothing of the minimum. The smoothing is
sharpened over a few stages and the ascent is run from many seeded
starting points at once; the best exact objective wins.
"""

from typing import NamedTuple

import numpy as np

from . import _seeding

N_RESTARTS = 32
CONVERGENCE_TOL = 1e-8
#: smoothing sharpness per stage, in units of 1/(current objective)
STAGES = (10.0, 100.0, 1000.0)
MAX_ITER = 2000


class MaxMinResult(NamedTuple):
    direction: np.ndarray
    gamma: float
    degenerate: bool = False


def maxmin_objective(reduced_channels, denominators, u):
    """``min_n |g_n^H u|^2 / c_n`` for one direction ``u`` or a batch of columns."""
    g = np.atleast_2d(np.asarray(reduced_channels))
    c = np.asarray(denominators, dtype=float).reshape(-1, *([1] * (np.ndim(u) - 1)))
    vals = np.abs(g.conj() @ u) ** 2 / c
    return vals.min(axis=0)


def _smoothed(vals, t):
    # -(1/t) log sum exp(-t v), stabilised by the column minimum; t is per column
    vmin = vals.min(axis=0)
    return vmin - np.log(np.exp(-t * (vals - vmin)).sum(axis=0)) / t


def _ascend(a, u, t, tol, max_iter):
    """Backtracking Riemannian ascent of the smoothed objective, all columns at once."""
    step = np.ones(u.shape[1])
    active = np.ones(u.shape[1], dtype=bool)
    z = a.conj() @ u
    vals = np.abs(z) ** 2
    f = _smoothed(vals, t)
    for _ in range(max_iter):
        if not active.any():
            break
        w = np.exp(-t * (vals - vals.min(axis=0)))
        w /= w.sum(axis=0)
        grad = a.T @ (w * z)
        grad -= u * np.real(np.sum(u.conj() * grad, axis=0))
        moved = np.zeros(u.shape[1], dtype=bool)
        for _ in range(40):
            trial = u + step * grad
            trial /= np.linalg.norm(trial, axis=0)
            tz = a.conj() @ trial
            tvals = np.abs(tz) ** 2
            tf = _smoothed(tvals, t)
            ok = active & ~moved & (tf >= f)
            if ok.any():
                change = np.linalg.norm(trial[:, ok] - u[:, ok], axis=0)
                u[:, ok], z[:, ok], vals[:, ok], f[ok] = trial[:, ok], tz[:, ok], tvals[:, ok], tf[ok]
                done = np.flatnonzero(ok)[change < tol]
                active[done] = False
                step[ok] *= 1.2
                moved |= ok
            pending = active & ~moved
            if not pending.any():
                break
            step[pending] *= 0.5
        stalled = active & ~moved
        active[stalled] = False
    return u


def maxmin_direction(reduced_channels, denominators, seed=0, n_restarts=N_RESTARTS,
                     tol=CONVERGENCE_TOL, zero_tol=0.0):
    """Best unit direction for multicasting one stream to a group.

    Parameters
    ----------
    reduced_channels : array_like, shape (K, D)
        Row ``n`` is ``g_n``, the channel of group member ``n`` seen through
        the ZF null-space basis.
    denominators : array_like, shape (K,)
        ``Q_n + sigma_n^2`` for each member.
    seed : int
        Seeds the random restarts.
    zero_tol : float
        The group is flagged degenerate when every ``||g_n||`` is at most
        this value.

    Returns
    -------
    MaxMinResult
        Unit direction, its exact max-min value ``gamma``, and a flag set
        when all reduced channels vanish (``gamma`` is then 0).
    """
    g = np.atleast_2d(np.asarray(reduced_channels, dtype=complex))
    c = np.asarray(denominators, dtype=float).reshape(-1)
    k, d = g.shape
    norms = np.linalg.norm(g, axis=1)
    if d < 1 or k < 1:
        raise ValueError("need a nonempty group and reduced dimension >= 1")
    if norms.max() <= zero_tol:
        u = np.zeros(d, dtype=complex)
        u[0] = 1.0
        return MaxMinResult(u, 0.0, True)

    if k == 1 or d == 1:
        if d == 1:
            u = np.ones(1, dtype=complex)
        else:
            u = g[0] / norms[0]
        return MaxMinResult(u, float(maxmin_objective(g, c, u)), False)

    a = g / np.sqrt(c)[:, None]
    scale = np.max(np.sum(np.abs(a) ** 2, axis=1))
    a = a / np.sqrt(scale)

    # matched filters first: if a member is the bottleneck of its own
    # matched filter, that direction is globally optimal
    nonzero = norms > 0
    starts = [(a[nonzero] / np.linalg.norm(a[nonzero], axis=1)[:, None]).T]
    rng = _seeding.rng(seed, _seeding.SOLVER)
    r = rng.standard_normal((2, d, n_restarts))
    r = r[0] + 1j * r[1]
    starts.append(r / np.linalg.norm(r, axis=0))
    u = np.concatenate(starts, axis=1)

    for sharpness in STAGES:
        level = np.maximum(maxmin_objective(a, np.ones(k), u), 1e-12)
        u = _ascend(a, u, sharpness / level, tol, MAX_ITER)

    exact = maxmin_objective(g, c, u)
    best = int(np.argmax(exact))
    direction = u[:, best]
    return MaxMinResult(direction, float(maxmin_objective(g, c, direction)), False)
