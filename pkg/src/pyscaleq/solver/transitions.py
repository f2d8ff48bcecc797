from typing import Final, Tuple

import numpy as np

from pyscaleq.model import StateSpace, StationaryDistribution

# outflow below this is treated as zero when the residual is made relative
RESIDUAL_FLOOR: Final = 1e-280


def transitions(state_space: StateSpace) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All arcs of the chain as flat arrays ``(src, dst, rate)``

    - arrival: ``(i, j) -> (i, j + 1)`` with rate lambda for ``j < K``
    - service: ``(i, j) -> (i, j - 1)`` with rate ``min(j, n0) mu`` on level 0 and ``n_i mu`` above,
      the level drops to ``i - 1`` when ``j - 1 < n_i``
    - setup completion: ``(i, j) -> (i + 1, j)`` with rate ``setup_count(i, j) alpha``
    """
    p = state_space.params
    levels = state_space.levels
    jobs = state_space.jobs
    setups = state_space.setups
    index = np.arange(state_space.total_states, dtype=np.int64)

    offsets = np.array(state_space.level_offsets, dtype=np.int64)
    first = np.array([state_space.first_job(i) for i in range(p.k + 1)], dtype=np.int64)

    src, dst, rate = [], [], []

    # arrivals stay on the level, the next state is stored next to the current one
    mask = jobs < p.K
    src.append(index[mask])
    dst.append(index[mask] + 1)
    rate.append(np.full(int(mask.sum()), p.lambda_))

    # services
    busy = np.where(levels == 0, np.minimum(jobs, p.n0), p.n0 + levels)
    mask = busy > 0
    drop = mask & (levels > 0) & (jobs == p.n0 + levels)
    stay = mask & ~drop
    src.append(index[stay])
    dst.append(index[stay] - 1)
    rate.append(busy[stay] * p.mu)

    below = levels[drop] - 1
    src.append(index[drop])
    dst.append(offsets[below] + jobs[drop] - 1 - first[below])
    rate.append(busy[drop] * p.mu)

    # setup completions
    mask = setups > 0
    above = levels[mask] + 1
    src.append(index[mask])
    dst.append(offsets[above] + jobs[mask] - first[above])
    rate.append(setups[mask] * p.alpha)

    return np.concatenate(src), np.concatenate(dst), np.concatenate(rate).astype(np.float64)


def balance_residual(distribution: StationaryDistribution) -> np.ndarray:
    """Per state ``|inflow - outflow| / outflow`` of the global balance equations"""
    space = distribution.state_space
    pi = distribution.pi
    src, dst, rate = transitions(space)

    out_rate = np.bincount(src, weights=rate, minlength=space.total_states)
    outflow = pi * out_rate
    inflow = np.bincount(dst, weights=pi[src] * rate, minlength=space.total_states)
    return np.abs(inflow - outflow) / np.maximum(outflow, RESIDUAL_FLOOR)
