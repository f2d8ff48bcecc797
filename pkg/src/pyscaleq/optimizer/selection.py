import logging
import math
from typing import Dict, Final, Iterator, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from pyscaleq.errors import CostSpecError, InvalidInstanceCountError, ParamsMismatchError
from pyscaleq.executor import map_ordered
from pyscaleq.model import BaseParams, PerformanceMetrics
from pyscaleq.solver import solve, SolveReport

from .cost import cost, CostSpec

log = logging.getLogger('pyscaleq.Optimizer')


class ScanRow(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    k: int
    Wq: float
    S: float
    C: Optional[float] = None
    feasible: bool


class OptimizationResult(BaseModel):
    """Selected number of dynamic instances together with the per-k table it was selected from"""
    model_config = ConfigDict(extra='forbid', frozen=True)

    mode: Literal['algorithm1', 'argmin']
    k_op: int
    cost: Optional[float]
    metrics_at_k: PerformanceMetrics
    feasible: bool
    scan: Tuple[ScanRow, ...]


class KScan:
    """Solver results per ``k`` for one base configuration, solved on first access"""

    def __init__(self, base: BaseParams):
        self.base: Final = base
        self._reports: Dict[int, SolveReport] = {}
        self._solve_calls: int = 0

    @property
    def solve_calls(self) -> int:
        return self._solve_calls

    @property
    def k_values(self) -> range:
        return range(self.base.k_max + 1)

    def _check_k(self, k: int):
        if not 0 <= k <= self.base.k_max:
            raise InvalidInstanceCountError(f'k must satisfy 0 <= k <= {self.base.k_max:d}: {k}')

    def get(self, k: int) -> SolveReport:
        """Solver result for ``k`` dynamic instances

        :param k: number of dynamic instances
        """
        self._check_k(k)
        try:
            return self._reports[k]
        except KeyError:
            pass

        report = solve(self.base.with_k(k))
        self._solve_calls += 1
        self._reports[k] = report
        log.debug(f'Solved k={k:d}: Wq={report.metrics.Wq:.6g} S={report.metrics.S:.6g}')
        return report

    def fill(self, workers: int = 1) -> 'KScan':
        """Solve every missing ``k``, optionally in worker processes"""
        missing = [k for k in self.k_values if k not in self._reports]
        if not missing:
            return self

        reports = map_ordered(solve, [self.base.with_k(k) for k in missing], workers)
        for k, report in zip(missing, reports):
            self._reports[k] = report
        self._solve_calls += len(missing)
        log.debug(f'Solved {len(missing):d} configurations for {self.base!r}')
        return self

    def rows(self, spec: Optional[CostSpec] = None) -> Tuple[ScanRow, ...]:
        """Table of ``(k, Wq, S, C, feasible)`` for every cached ``k``, ``C`` only if weights are given"""
        wq_limit = spec.wq_limit if spec is not None else math.inf
        rows: List[ScanRow] = []
        for k in sorted(self._reports):
            m = self._reports[k].metrics
            c = cost(m, spec) if spec is not None and spec.has_weights else None
            rows.append(ScanRow(k=k, Wq=m.Wq, S=m.S, C=c, feasible=_is_feasible(m, wq_limit)))
        return tuple(rows)

    def __getitem__(self, k: int) -> SolveReport:
        return self.get(k)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._reports))

    def __len__(self):
        return len(self._reports)

    def __repr__(self):
        return f'<{self.__class__.__name__:s} {self.base!r} cached={len(self._reports):d}/{self.base.k_max + 1:d}>'


def _get_scan(base: BaseParams, scan: Optional[KScan]) -> KScan:
    if scan is None:
        return KScan(base)
    if scan.base != base:
        raise ParamsMismatchError(f'Scan was created for {scan.base!r}, not for {base!r}')
    return scan


def _ratio(metrics: PerformanceMetrics, spec: CostSpec) -> float:
    s_norm = metrics.S / spec.s_bar
    wq_norm = metrics.Wq / spec.wq_bar
    if wq_norm <= 0:
        return math.inf
    return s_norm / wq_norm


def select_k_algorithm1(base: BaseParams, spec: CostSpec, scan: Optional[KScan] = None) -> int:
    """Increase ``k`` as long as the normalized ratio ``(S / s_bar) / (Wq / wq_bar)`` stays below ``delta``.

    Configurations are solved lazily, at most ``K - n0 + 1`` solves are made.

    :param base: configuration without ``k``
    :param spec: ``delta``, ``s_bar`` and ``wq_bar`` are required
    :param scan: optional cache, reused across calls
    :return: the selected ``k``
    """
    if spec.s_bar is None or spec.wq_bar is None:
        raise CostSpecError('The normalizers s_bar and wq_bar are required')
    delta = spec.derived_delta
    scan = _get_scan(base, scan)

    if math.isinf(delta):
        log.info(f'Selected k={base.k_max:d} for delta=inf, all instances used')
        return base.k_max

    for k in scan.k_values:
        if _ratio(scan[k].metrics, spec) < delta:
            continue
        log.info(f'Selected k={k:d} for delta={delta:g}')
        return k

    log.info(f'Selected k={base.k_max:d} for delta={delta:g}, all instances used')
    return base.k_max


def _is_feasible(metrics: PerformanceMetrics, wq_limit: float) -> bool:
    # Wq = 0 counts as feasible
    return 0 <= metrics.Wq < wq_limit


def _result(scan: KScan, spec: CostSpec, k_op: int, mode: str) -> OptimizationResult:
    m = scan[k_op].metrics
    return OptimizationResult(
        mode=mode, k_op=k_op,
        cost=cost(m, spec) if spec.has_weights else None,
        metrics_at_k=m,
        feasible=_is_feasible(m, spec.wq_limit),
        scan=scan.rows(spec),
    )


def algorithm1_report(base: BaseParams, spec: CostSpec, scan: Optional[KScan] = None,
                      workers: int = 1) -> OptimizationResult:
    """Run the threshold ratio selection and report it together with the complete per-k table"""
    scan = _get_scan(base, scan).fill(workers)
    k_op = select_k_algorithm1(base, spec, scan)
    return _result(scan, spec, k_op, 'algorithm1')


def argmin_k(base: BaseParams, spec: CostSpec, scan: Optional[KScan] = None,
             workers: int = 1) -> OptimizationResult:
    """Minimize ``C(k)`` over all ``k`` subject to ``Wq(k) < wq_limit``.

    Ties go to the smaller ``k``. If no ``k`` satisfies the limit the ``k`` with the smallest ``Wq``
    is returned and the result is marked infeasible.

    :param base: configuration without ``k``
    :param spec: ``w1`` and ``w2`` are required
    :param scan: optional cache
    :param workers: worker processes for the scan
    """
    if not spec.has_weights:
        raise CostSpecError('The weights w1 and w2 are required')
    scan = _get_scan(base, scan).fill(workers)

    best_k: Optional[int] = None
    best_c = math.inf
    for k in scan.k_values:
        m = scan[k].metrics
        if not _is_feasible(m, spec.wq_limit):
            continue
        c = cost(m, spec)
        if best_k is None or c < best_c:
            best_k, best_c = k, c

    if best_k is None:
        best_k = min(scan.k_values, key=lambda x: (scan[x].metrics.Wq, x))
        log.info(f'No k satisfies Wq < {spec.wq_limit:g}, using k={best_k:d} with the smallest Wq')
    else:
        log.info(f'Selected k={best_k:d} with cost {best_c:.6g}')

    return _result(scan, spec, best_k, 'argmin')
