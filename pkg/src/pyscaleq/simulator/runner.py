import logging
import math
from typing import Final, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy import stats

from pyscaleq.executor import map_ordered
from pyscaleq.model import PerformanceMetrics, SystemParams

from .config import SimConfig
from .engine import ReplicationStats, simulate_once

log = logging.getLogger('pyscaleq.Simulator')


CONFIDENCE: Final = 0.95


class Estimate(BaseModel):
    """Point estimate with the half width of its confidence interval (``None`` for a single replication)"""
    model_config = ConfigDict(extra='forbid', frozen=True)

    mean: float
    half_width: Optional[float]

    @property
    def low(self) -> float:
        return self.mean - (self.half_width or 0.0)

    @property
    def high(self) -> float:
        return self.mean + (self.half_width or 0.0)


class SimulationResult(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    params: SystemParams
    config: SimConfig
    L: Estimate
    W: Estimate
    Wq: Estimate
    Pb: Estimate
    S: Estimate
    accepted_jobs: int
    blocked_jobs: int
    replications: Tuple[ReplicationStats, ...]

    def estimate(self, name: str) -> Estimate:
        return getattr(self, name)

    def metrics(self) -> PerformanceMetrics:
        """Point estimates as metrics"""
        return PerformanceMetrics(L=self.L.mean, W=self.W.mean, Wq=self.Wq.mean, Pb=self.Pb.mean, S=self.S.mean)


def half_width(values: Sequence[float], confidence: float = CONFIDENCE) -> Optional[float]:
    """Half width of the Student-t confidence interval of the mean"""
    if len(values) < 2:
        return None
    arr = np.asarray(values, dtype=np.float64)
    q = stats.t.ppf(1 - (1 - confidence) / 2, len(arr) - 1)
    return float(q * arr.std(ddof=1) / math.sqrt(len(arr)))


def _estimate(values: Sequence[float], mean: Optional[float] = None) -> Estimate:
    return Estimate(mean=float(np.mean(values)) if mean is None else mean, half_width=half_width(values))


def _run_replication(args: Tuple[SystemParams, SimConfig, int]) -> ReplicationStats:
    return simulate_once(*args)


def simulate(params: SystemParams, config: SimConfig, workers: int = 1) -> SimulationResult:
    """Run all replications and aggregate them.

    Replication ``r`` always uses the random substream derived from ``(seed, r)``,
    so the result does not depend on the number of workers.

    :param params: model configuration
    :param config: simulation configuration
    :param workers: worker processes
    """
    config = config.bound(params)
    log.debug(f'Simulating {params!r} with {config.replications:d} replications of {config.horizon:g}s')

    reps: Tuple[ReplicationStats, ...] = tuple(
        map_ordered(_run_replication, [(params, config, idx) for idx in range(config.replications)], workers)
    )

    accepted = sum(r.accepted for r in reps)
    blocked = sum(r.blocked for r in reps)
    arrivals = accepted + blocked

    result = SimulationResult(
        params=params,
        config=config,
        L=_estimate([r.L for r in reps]),
        W=_estimate([r.W for r in reps]),
        Wq=_estimate([r.Wq for r in reps]),
        Pb=_estimate([r.Pb for r in reps], blocked / arrivals if arrivals else 0.0),
        S=_estimate([r.S for r in reps]),
        accepted_jobs=accepted,
        blocked_jobs=blocked,
        replications=reps,
    )
    log.debug(f'Simulated {params!r}: Wq={result.Wq.mean:.4g} S={result.S.mean:.4g} Pb={result.Pb.mean:.4g}')
    return result
