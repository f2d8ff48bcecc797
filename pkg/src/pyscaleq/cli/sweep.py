import logging
import math
from typing import Final, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from pyscaleq.errors import ParameterError, PyScaleQError, SweepSpecError
from pyscaleq.executor import map_ordered
from pyscaleq.model import PerformanceMetrics, SystemParams
from pyscaleq.solver import solve

log = logging.getLogger('pyscaleq.Sweep')


TYPE_SWEEP_PARAM = Literal['lambda', 'k', 'K', 'n0', 'alpha', 'mu']
INTEGER_PARAMS: Final = frozenset({'k', 'K', 'n0'})
GRID_SLACK: Final = 1e-9

CSV_COLUMNS: Final = ('series', 'param', 'value', 'L', 'W', 'Wq', 'Pb', 'S')


def _check_integer(name: str, value: float):
    if value != int(value):
        raise SweepSpecError(f'Sweep over {name} requires integer values: {value}')


class SweepRow(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    series: str
    param: str
    value: float
    metrics: PerformanceMetrics

    def as_record(self) -> dict:
        return {'series': self.series, 'param': self.param, 'value': self.value, **self.metrics.as_dict()}


class SweepSpec(BaseModel):
    """Grid ``start, start + step, .. <= stop`` over one parameter, optionally repeated per series value"""
    model_config = ConfigDict(extra='forbid', frozen=True)

    param: TYPE_SWEEP_PARAM
    start: float
    stop: float
    step: float
    base: SystemParams
    series_param: Optional[TYPE_SWEEP_PARAM] = None
    series: Tuple[float, ...] = ()

    @model_validator(mode='after')
    def _validate(self) -> 'SweepSpec':
        if not self.step > 0:
            raise SweepSpecError(f'Sweep step must be > 0: {self.step}')
        if not self.start <= self.stop:
            raise SweepSpecError(f'Sweep must satisfy from <= to: from={self.start:g}, to={self.stop:g}')
        if self.param in INTEGER_PARAMS:
            for value in (self.start, self.stop, self.step):
                _check_integer(self.param, value)

        if (self.series_param is None) != (not self.series):
            raise SweepSpecError('Series values and the series parameter must be given together')
        if self.series_param is not None:
            if self.series_param == self.param:
                raise SweepSpecError(f'Series parameter must differ from the swept parameter {self.param}')
            if self.series_param in INTEGER_PARAMS:
                for value in self.series:
                    _check_integer(self.series_param, value)
        return self

    def grid(self) -> List[float]:
        count = math.floor((self.stop - self.start) / self.step + GRID_SLACK) + 1
        values = [self.start + idx * self.step for idx in range(count)]
        if self.param in INTEGER_PARAMS:
            values = [float(round(v)) for v in values]
        return values

    def points(self) -> List[Tuple[str, float, SystemParams]]:
        """Every grid point as ``(series id, swept value, params)`` ordered by series then value"""
        series: List[Tuple[str, SystemParams]] = [('base', self.base)]
        if self.series_param is not None:
            series = [(f'{self.series_param}={v:g}', _with(self.base, self.series_param, v)) for v in self.series]

        ret = []
        for name, params in series:
            for value in self.grid():
                ret.append((name, value, _with(params, self.param, value)))
        return ret


def _with(params: SystemParams, name: str, value: float) -> SystemParams:
    try:
        return params.replace(**{name: int(value) if name in INTEGER_PARAMS else value})
    except ParameterError as e:
        raise SweepSpecError(f'Invalid sweep point {name}={value:g}: {e}') from None


def _solve_point(params: SystemParams) -> PerformanceMetrics:
    try:
        return solve(params).metrics
    except PyScaleQError as e:
        raise type(e)(f'Sweep point {params!r} failed: {e}') from None


def run_sweep(spec: SweepSpec, workers: int = 1) -> List[SweepRow]:
    """Solve every grid point, rows are in grid order independent of ``workers``"""
    points = spec.points()
    log.debug(f'Sweeping {spec.param} over {len(points):d} points')

    results = map_ordered(_solve_point, [params for _, _, params in points], workers)
    return [
        SweepRow(series=name, param=spec.param, value=value, metrics=m)
        for (name, value, _), m in zip(points, results)
    ]
