from typing import Tuple

import numpy as np

from pyscaleq.errors import UndefinedMetricError
from pyscaleq.model import PerformanceMetrics, StationaryDistribution, SystemParams


def metrics(distribution: StationaryDistribution, params: SystemParams) -> PerformanceMetrics:
    """Evaluate the performance metrics of a normalized distribution

    :param distribution: stationary distribution
    :param params: configuration the distribution was computed for
    """
    space = distribution.state_space
    pi = distribution.pi

    L = float(np.dot(pi, space.jobs))
    Pb = float(pi[space.jobs == params.K].sum())
    if Pb >= 1:
        raise UndefinedMetricError(f'Response time is undefined for blocking probability {Pb}')

    # waiting jobs: level i keeps n_i servers busy once j >= n_i
    busy = np.minimum(space.jobs, params.n0 + space.levels)
    Lq = float(np.dot(pi, space.jobs - busy))
    Wq = Lq / (params.lambda_ * (1 - Pb))
    W = Wq + 1 / params.mu

    S = float(np.dot(pi, space.levels + space.setups))
    return PerformanceMetrics(L=L, W=W, Wq=Wq, Pb=min(max(Pb, 0.0), 1.0), S=S)


def instance_breakdown(distribution: StationaryDistribution) -> Tuple[float, float]:
    """Split S into the mean number of active dynamic instances and the mean number in setup"""
    space = distribution.state_space
    active = float(np.dot(distribution.pi, space.levels))
    setup = float(np.dot(distribution.pi, space.setups))
    return active, setup
