import logging
from logging import DEBUG as LVL_DEBUG
from time import monotonic
from typing import Final, List, Optional, Sequence, Tuple

import numpy as np

from pyscaleq.errors import NumericalFaultError
from pyscaleq.model import build_state_space, PerformanceMetrics, StateSpace, StationaryDistribution, SystemParams

from .evaluate import metrics as evaluate_metrics
from .op_counter import OperationCounter
from .transitions import balance_residual

log = logging.getLogger('pyscaleq.Solver')


RESCALE_LIMIT: Final = 1e250
RESCALE_FACTOR: Final = 1e-250
BOUND_SLACK: Final = 1e-12


class RecursionCoefficients:
    """Coefficients of ``pi_{i,j} = a_j + b_j * pi_{i,j-1}`` for one level.

    Both sequences are stored for ``j = first .. K``. On level 0 ``a`` is zero and ``first`` is 1,
    on level ``i >= 1`` ``first`` is ``n_i + 1`` and the sequences are empty if ``n_i = K``.
    """
    __slots__ = ('level', 'first', 'a', 'b')

    def __init__(self, level: int, first: int, a: Sequence[float], b: Sequence[float]):
        self.level: Final = level
        self.first: Final = first

        a_arr = np.array(a, dtype=np.float64)
        b_arr = np.array(b, dtype=np.float64)
        a_arr.flags.writeable = False
        b_arr.flags.writeable = False
        self.a: Final = a_arr
        self.b: Final = b_arr

    def a_at(self, j: int) -> float:
        return float(self.a[j - self.first])

    def b_at(self, j: int) -> float:
        return float(self.b[j - self.first])

    @property
    def jobs(self) -> range:
        return range(self.first, self.first + len(self.b))

    def __len__(self):
        return len(self.b)

    def __repr__(self):
        return f'<{self.__class__.__name__:s} level={self.level:d} j={self.first:d}..{self.first + len(self.b) - 1:d}>'


class SolveReport:
    """Result of a recursive solve"""
    __slots__ = ('distribution', 'metrics', 'rescale_events', 'max_balance_residual', 'operations',
                 'coefficients', 'duration')

    def __init__(self, distribution: StationaryDistribution, metrics: PerformanceMetrics, *,
                 rescale_events: int, max_balance_residual: float, operations: int,
                 coefficients: Tuple[RecursionCoefficients, ...], duration: float):
        self.distribution: Final = distribution
        self.metrics: Final = metrics
        self.rescale_events: Final = rescale_events
        self.max_balance_residual: Final = max_balance_residual
        self.operations: Final = operations
        self.coefficients: Final = coefficients
        self.duration: Final = duration

    @property
    def params(self) -> SystemParams:
        return self.distribution.state_space.params

    def __repr__(self):
        return (f'<{self.__class__.__name__:s} states={len(self.distribution):d} '
                f'rescales={self.rescale_events:d} residual={self.max_balance_residual:.1e}>')


def _denominator(value: float, level: int, j: int) -> float:
    if not value > 0:
        raise NumericalFaultError(f'Non positive denominator {value} for level {level:d}, j={j:d}')
    return value


def _forward(masses: List[float], a: List[float], b: List[float], level: int,
             counter: Optional[OperationCounter]) -> int:
    """Apply ``pi_j = a_j + b_j pi_{j-1}`` in place after the seed ``masses[0]``.

    Rescales the computed prefix and the outstanding ``a`` whenever a mass exceeds the limit.
    Returns the number of applied rescales.
    """
    rescales = 0
    prev = masses[0]
    for idx in range(len(b)):
        value = a[idx] + b[idx] * prev
        if value > RESCALE_LIMIT:
            rescales += 1
            log.debug(f'Rescaling level {level:d} during forward pass at position {idx + 1:d}')
            for pos in range(len(masses)):
                masses[pos] *= RESCALE_FACTOR
            for pos in range(idx, len(a)):
                a[pos] *= RESCALE_FACTOR
            prev = masses[-1]
            value = a[idx] + b[idx] * prev
        masses.append(value)
        prev = value

    if counter is not None:
        counter.add(len(b))
    return rescales


def solve_level0(params: SystemParams, state_space: StateSpace,
                 counter: Optional[OperationCounter] = None) -> Tuple[RecursionCoefficients, np.ndarray, int]:
    """Coefficients ``b^(0)`` and unnormalized masses of level 0 with ``pi_{0,0} = 1``.

    :return: coefficients, masses for ``j = 0 .. K`` and the number of rescales
    """
    lam, mu, alpha = params.lambda_, params.mu, params.alpha
    n0, N, K = params.n0, params.N, params.K

    b = [0.0] * K   # b[j - 1] = b_j
    for j in range(1, n0 + 1):
        b[j - 1] = lam / (j * mu)

    service = n0 * mu
    if K > n0:
        b[K - 1] = lam / _denominator(service + (N - n0) * alpha, 0, K)
        for j in range(K - 1, n0, -1):
            setup = min(j - n0, N - n0) * alpha
            d = _denominator(lam + service + setup - service * b[j], 0, j)
            b[j - 1] = lam / d

    # Coefficient bounds for the queueing part
    for j in range(n0 + 1, K + 1):
        bound = lam / (service + min(j - n0, N - n0) * alpha)
        if not 0 < b[j - 1] <= bound * (1 + BOUND_SLACK):
            raise NumericalFaultError(f'Coefficient b_{j:d} of level 0 violates its bound: {b[j - 1]} > {bound}')

    a = [0.0] * K
    masses = [1.0]
    rescales = _forward(masses, a, b, 0, counter)
    if counter is not None:
        counter.add(K)

    return RecursionCoefficients(0, 1, a, b), np.array(masses), rescales


def boundary_mass(level: int, masses: np.ndarray, params: SystemParams,
                  counter: Optional[OperationCounter] = None) -> float:
    """Unnormalized mass of state ``(i + 1, n_{i + 1})`` from the masses of level ``i``

    :param level: level ``i``
    :param masses: masses of level ``i`` ordered by job count (``j = 0 ..`` for level 0, ``j = n_i ..`` else)
    :param params: model configuration
    """
    n0, N, K = params.n0, params.N, params.K
    n_i = n0 + level
    first = 0 if level == 0 else n_i

    total = 0.0
    for j in range(n_i + 1, K + 1):
        total += min(j - n_i, N - n_i) * params.alpha * masses[j - first]

    if counter is not None:
        counter.add(K - n_i)
    return total / ((n_i + 1) * params.mu)


def solve_level(level: int, prev_masses: np.ndarray, seed: float, params: SystemParams,
                counter: Optional[OperationCounter] = None) -> Tuple[RecursionCoefficients, np.ndarray, int]:
    """Unnormalized masses of level ``i >= 1`` for ``j = n_i .. K``

    :param level: level ``i``
    :param prev_masses: masses of level ``i - 1`` ordered by job count
    :param seed: mass of state ``(i, n_i)``
    :param params: model configuration
    :return: coefficients, masses and the number of rescales
    """
    if not 1 <= level <= params.k:
        raise NumericalFaultError(f'Level {level:d} out of range 1..{params.k:d}')

    lam, mu, alpha = params.lambda_, params.mu, params.alpha
    n0, N, K = params.n0, params.N, params.K
    n_i = n0 + level
    n_prev = n_i - 1
    first_prev = 0 if level == 1 else n_prev
    service = n_i * mu
    top = level == params.k

    size = K - n_i
    a = [0.0] * size    # a[j - n_i - 1] = a_j
    b = [0.0] * size

    if size:
        inflow = (N - n_prev) * alpha * prev_masses[K - first_prev]
        d = _denominator(service + (N - n_i) * alpha, level, K)
        a[size - 1] = inflow / d
        b[size - 1] = lam / d

        for j in range(K - 1, n_i, -1):
            pos = j - n_i - 1
            setup = min(j - n_i, N - n_i) * alpha
            d = _denominator(lam + setup + service - service * b[pos + 1], level, j)
            inflow = min(j - n_prev, N - n_prev) * alpha * prev_masses[j - first_prev]
            a[pos] = (service * a[pos + 1] + inflow) / d
            b[pos] = lam / d

    # Coefficient bounds, on the top level there is no setup
    for pos in range(size):
        j = pos + n_i + 1
        bound = lam / (service + min(j - n_i, N - n_i) * alpha)
        if not 0 < b[pos] <= bound * (1 + BOUND_SLACK):
            raise NumericalFaultError(
                f'Coefficient b_{j:d} of level {level:d}{" (top)" if top else ""} violates its bound: '
                f'{b[pos]} > {bound}')
        if a[pos] < 0:
            raise NumericalFaultError(f'Coefficient a_{j:d} of level {level:d} is negative: {a[pos]}')

    masses = [seed]
    rescales = _forward(masses, a, b, level, counter)
    if counter is not None:
        counter.add(size)

    return RecursionCoefficients(level, n_i + 1, a, b), np.array(masses), rescales


def solve(params: SystemParams) -> SolveReport:
    """Solve the chain with the level recursion in ``O(total_states)``"""
    start = monotonic()
    space = build_state_space(params)
    counter = OperationCounter()

    coefficients, masses, rescales = solve_level0(params, space, counter)
    levels: List[np.ndarray] = [masses]
    all_coefficients = [coefficients]
    rescale_events = 0

    def rescale(count: int, upto: int):
        nonlocal rescale_events
        if not count:
            return None
        rescale_events += count
        # apply one factor at a time, the product would underflow
        for _ in range(count):
            for pos in range(upto):
                levels[pos] = levels[pos] * RESCALE_FACTOR

    rescale(rescales, 0)

    for level in range(1, params.k + 1):
        seed = boundary_mass(level - 1, levels[-1], params, counter)
        coefficients, masses, rescales = solve_level(level, levels[-1], seed, params, counter)
        levels.append(masses)
        all_coefficients.append(coefficients)

        # masses of previous levels are expressed in the old scale
        rescale(rescales, level)

        if float(np.max(masses)) > RESCALE_LIMIT:
            rescale(1, level + 1)
            log.debug(f'Rescaled after level {level:d}')

    flat = np.concatenate(levels)
    if not np.all(np.isfinite(flat)):
        raise NumericalFaultError('Recursion produced non finite masses!')
    counter.add(len(flat))

    distribution = StationaryDistribution.from_masses(space, flat)
    report = SolveReport(
        distribution, evaluate_metrics(distribution, params),
        rescale_events=rescale_events,
        max_balance_residual=float(np.max(balance_residual(distribution))),
        operations=counter.value,
        coefficients=tuple(all_coefficients),
        duration=monotonic() - start,
    )

    if log.isEnabledFor(LVL_DEBUG):
        log.debug(f'Solved {params!r}: {space.total_states:d} states, {counter.value:d} operations, '
                  f'{rescale_events:d} rescales, residual {report.max_balance_residual:.2e} '
                  f'in {report.duration * 1000:.1f}ms')
    return report
