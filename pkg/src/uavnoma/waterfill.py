"""Sum-rate water-filling across parallel streams."""

import numpy as np

from .errors import InvalidPower


def waterfill(gains, total_power):
    """Maximise ``sum(log2(1 + g_j p_j))`` subject to ``sum(p) <= P``, ``p >= 0``.

    Parameters
    ----------
    gains : array_like
        Nonnegative per-stream SNR gains (SNR per unit power).
    total_power : float
        Power budget ``P >= 0``.

    Returns
    -------
    powers : ndarray
        ``p_j = max(0, mu - 1/g_j)`` with the water level ``mu`` set so the
        budget is used exactly. Streams with zero gain get zero power.
    level : float
        The water level ``mu`` (0 when nothing is allocated).
    """
    g = np.asarray(gains, dtype=float).reshape(-1)
    if total_power < 0 or not np.isfinite(total_power):
        raise InvalidPower(f"total_power must be finite and >= 0, got {total_power}")
    if np.any(g < 0):
        raise ValueError("gains must be nonnegative")
    powers = np.zeros_like(g)
    usable = np.flatnonzero(g > 0)
    if total_power == 0 or usable.size == 0:
        return powers, 0.0

    # strongest first; drop the weakest until its floor sits below the level
    order = usable[np.argsort(-g[usable], kind="stable")]
    floors = 1.0 / g[order]
    for k in range(len(order), 0, -1):
        level = (total_power + floors[:k].sum()) / k
        if level > floors[k - 1]:
            break
    active = order[:k]
    powers[active] = level - 1.0 / g[active]
    # absorb rounding so the budget is met exactly
    powers[active[0]] += total_power - powers.sum()
    return powers, float(level)


def kkt_residual(gains, powers, total_power, level):
    """Largest violation of the water-filling optimality conditions, relative to the level."""
    g = np.asarray(gains, dtype=float)
    p = np.asarray(powers, dtype=float)
    if level == 0:
        return float(np.abs(p).max(initial=0.0))
    res = [abs(p.sum() - total_power) / max(total_power, 1.0)]
    pos = g > 0
    act = pos & (p > 0)
    if np.any(act):
        res.append(np.max(np.abs(p[act] + 1.0 / g[act] - level)) / level)
    idle = pos & (p <= 0)
    if np.any(idle):
        res.append(np.max(np.maximum(0.0, level - 1.0 / g[idle])) / level)
    res.append(np.max(np.maximum(0.0, -p)) / level)
    return float(max(res))


def sum_rate(gains, powers):
    return float(np.sum(np.log2(1.0 + np.asarray(gains) * np.asarray(powers))))
