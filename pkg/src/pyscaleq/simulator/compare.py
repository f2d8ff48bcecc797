import logging
import math
from typing import Final, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from pyscaleq.errors import ParamsMismatchError
from pyscaleq.solver import SolveReport

from .runner import SimulationResult

log = logging.getLogger('pyscaleq.Simulator')


COMPARED_METRICS: Final = ('Wq', 'S', 'Pb', 'L', 'W')

# absolute slack for coverage, needed when every replication observed exactly 0
COVERAGE_ATOL: Final = 1e-6


class ComparisonRow(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    metric: str
    analytical: float
    simulated: float
    half_width: Optional[float]
    covered: bool
    gap: float
    relative_gap: Optional[float]


class ComparisonReport(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    rows: Tuple[ComparisonRow, ...]

    @property
    def all_covered(self) -> bool:
        return all(row.covered for row in self.rows)

    def row(self, metric: str) -> ComparisonRow:
        for row in self.rows:
            if row.metric == metric:
                return row
        raise KeyError(metric)


def _check_mean(name: str, mean: Optional[float], rate: float):
    if mean is not None and not math.isclose(mean, 1 / rate, rel_tol=1e-12):
        raise ParamsMismatchError(f'Simulated {name} mean {mean:g} does not match the model rate {rate:g}')


def compare(report: SolveReport, sim: SimulationResult) -> ComparisonReport:
    """Compare solver metrics with the simulated confidence intervals

    :param report: solver result
    :param sim: simulation of the same configuration with exponential durations
    """
    params = report.params
    if params != sim.params:
        raise ParamsMismatchError(f'Solver and simulation differ: {params!r} != {sim.params!r}')

    config = sim.config
    if not config.is_exponential:
        raise ParamsMismatchError(
            f'Comparison requires exponential durations: interarrival={config.interarrival}, '
            f'service={config.service}, setup={config.setup}')
    _check_mean('interarrival', config.interarrival.mean, params.lambda_)
    _check_mean('service', config.service.mean, params.mu)
    _check_mean('setup', config.setup.mean, params.alpha)

    analytical = report.metrics.as_dict()
    rows = []
    for name in COMPARED_METRICS:
        est = sim.estimate(name)
        value = analytical[name]
        gap = est.mean - value
        covered = est.half_width is not None and abs(gap) <= est.half_width + COVERAGE_ATOL
        rows.append(
            ComparisonRow(metric=name, analytical=value, simulated=est.mean, half_width=est.half_width,
                          covered=covered, gap=gap, relative_gap=gap / abs(value) if value else None)
        )

    ret = ComparisonReport(rows=tuple(rows))
    if not ret.all_covered:
        missed = ', '.join(r.metric for r in ret.rows if not r.covered)
        log.info(f'Confidence intervals do not cover the solver values for {missed:s}')
    return ret
