from typing import Final

import numpy as np

DEFAULT_BLOCK_SIZE: Final = 1024


class SamplerBase:
    """Positive random durations with a fixed mean"""

    def __init__(self, mean: float):
        self.mean: Final = mean

    def draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        raise NotImplementedError()

    def describe(self) -> str:
        """return debug string of the configured distribution"""
        return f'mean={self.mean:g}'

    def __repr__(self):
        return f'<{self.__class__.__name__:s} {self.describe():s}>'


class VariateStream:
    """Hands out single values of a sampler, drawn from the generator in blocks"""
    __slots__ = ('_sampler', '_rng', '_block_size', '_buf', '_pos')

    def __init__(self, sampler: SamplerBase, rng: np.random.Generator, block_size: int = DEFAULT_BLOCK_SIZE):
        assert block_size > 0
        self._sampler: Final = sampler
        self._rng: Final = rng
        self._block_size: Final = block_size
        self._buf: list = []
        self._pos: int = 0

    @property
    def sampler(self) -> SamplerBase:
        return self._sampler

    def next(self) -> float:
        if self._pos >= len(self._buf):
            self._buf = self._sampler.draw(self._rng, self._block_size).tolist()
            self._pos = 0
        value = self._buf[self._pos]
        self._pos += 1
        return value
