import math
from typing import Final

import numpy as np
from scipy import stats
from scipy.optimize import brentq

from pyscaleq.errors import DistributionSpecError

from .sampler_base import SamplerBase


class FrozenSampler(SamplerBase):
    """Sampler backed by a frozen ``scipy.stats`` distribution"""

    def __init__(self, mean: float, rv):
        super().__init__(mean)
        self.rv: Final = rv

    def draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return self.rv.rvs(size=size, random_state=rng)


class ExponentialSampler(FrozenSampler):
    def __init__(self, mean: float):
        super().__init__(mean, stats.expon(scale=mean))


class DeterministicSampler(SamplerBase):
    def draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return np.full(size, self.mean, dtype=np.float64)


class GammaSampler(FrozenSampler):
    def __init__(self, mean: float, shape: float):
        if not shape > 0:
            raise DistributionSpecError(f'Gamma shape must be > 0: {shape}')
        super().__init__(mean, stats.gamma(a=shape, scale=mean / shape))
        self.shape: Final = shape

    def describe(self) -> str:
        return f'{super().describe()} shape={self.shape:g}'


class ErlangSampler(GammaSampler):
    def __init__(self, mean: float, phases: int):
        if phases < 1 or phases != int(phases):
            raise DistributionSpecError(f'Erlang phases must be an integer >= 1: {phases}')
        super().__init__(mean, int(phases))


class UniformSampler(FrozenSampler):
    """Uniform on ``mean * (1 - h) .. mean * (1 + h)``"""

    def __init__(self, mean: float, half_width: float = 1.0):
        if not 0 < half_width <= 1:
            raise DistributionSpecError(f'Uniform half width must satisfy 0 < h <= 1: {half_width}')
        super().__init__(mean, stats.uniform(loc=mean * (1 - half_width), scale=2 * mean * half_width))
        self.half_width: Final = half_width

    def describe(self) -> str:
        return f'{super().describe()} h={self.half_width:g}'


def _truncated_normal(loc: float, scale: float):
    return stats.truncnorm(a=-loc / scale, b=math.inf, loc=loc, scale=scale)


class TruncatedNormalSampler(FrozenSampler):
    """Normal with standard deviation ``cv * mean`` truncated at 0.

    The location is shifted so that the truncated distribution keeps the requested mean.
    """
    MAX_CV: Final = 2.0

    def __init__(self, mean: float, cv: float = 0.5):
        if not 0 < cv <= self.MAX_CV:
            raise DistributionSpecError(f'Truncated normal cv must satisfy 0 < cv <= {self.MAX_CV:g}: {cv}')
        scale = cv * mean

        def mean_gap(loc: float) -> float:
            return _truncated_normal(loc, scale).mean() - mean

        # the truncated mean grows with loc and is above mean at loc = mean
        lower = mean - scale
        while mean_gap(lower) > 0:
            lower -= 2 * scale
        loc = brentq(mean_gap, lower, mean, xtol=1e-12 * mean)

        super().__init__(mean, _truncated_normal(loc, scale))
        self.cv: Final = cv
        self.loc: Final = loc

    def describe(self) -> str:
        return f'{super().describe()} cv={self.cv:g} loc={self.loc:g}'


class ParetoSampler(FrozenSampler):
    """Pareto with minimum ``mean * (shape - 1) / shape``"""

    def __init__(self, mean: float, shape: float):
        if not shape > 1:
            raise DistributionSpecError(f'Pareto shape must be > 1 for a finite mean: {shape}')
        super().__init__(mean, stats.pareto(b=shape, scale=mean * (shape - 1) / shape))
        self.shape: Final = shape

    def describe(self) -> str:
        return f'{super().describe()} shape={self.shape:g}'
