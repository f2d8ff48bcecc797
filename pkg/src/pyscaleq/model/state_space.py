from typing import Final, Iterator, Tuple

import numpy as np

from pyscaleq.errors import IndexOutOfRangeError, StateNotFoundError

from .params import SystemParams


def _read_only(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class StateSpace:
    """Flat indexing of the states ``(i, j)`` of the chain.

    ``i`` is the number of active dynamic instances and ``j`` the number of jobs in the system.
    Level 0 holds ``j = 0 .. K``, level ``i >= 1`` holds ``j = n_i .. K``.
    The states of a level are stored contiguously, ordered by ``j``.
    """
    __slots__ = ('params', 'level_offsets', 'total_states', 'levels', 'jobs', 'setups',
                 '_first_job', '_k', '_K', '_n0', '_N')

    def __init__(self, params: SystemParams):
        self.params: Final = params

        self._k: Final = params.k
        self._K: Final = params.K
        self._n0: Final = params.n0
        self._N: Final = params.N

        # first valid job count per level
        self._first_job: Final = tuple([0] + [params.n0 + i for i in range(1, params.k + 1)])

        # index of state (i, n_i) - for level 0 this is state (0, 0)
        offsets = []
        total = 0
        for i in range(params.k + 1):
            offsets.append(total)
            total += self._K - self._first_job[i] + 1
        self.level_offsets: Final = tuple(offsets)
        self.total_states: Final = total

        levels = np.empty(total, dtype=np.int64)
        jobs = np.empty(total, dtype=np.int64)
        for i in range(params.k + 1):
            sl = self.level_slice(i)
            levels[sl] = i
            jobs[sl] = np.arange(self._first_job[i], self._K + 1)
        n_levels = self._n0 + levels
        setups = np.minimum(np.maximum(jobs - n_levels, 0), self._N - n_levels)

        self.levels: Final = _read_only(levels)
        self.jobs: Final = _read_only(jobs)
        self.setups: Final = _read_only(setups)

    def contains(self, i: int, j: int) -> bool:
        if not 0 <= i <= self._k:
            return False
        return self._first_job[i] <= j <= self._K

    def encode(self, i: int, j: int) -> int:
        """Return the flat index of state ``(i, j)``

        :param i: number of active dynamic instances
        :param j: number of jobs in the system
        """
        if not self.contains(i, j):
            raise StateNotFoundError(f'State ({i}, {j}) is not part of the state space!')
        return self.level_offsets[i] + j - self._first_job[i]

    def decode(self, index: int) -> Tuple[int, int]:
        """Return the state ``(i, j)`` for a flat index

        :param index: flat index
        """
        if not 0 <= index < self.total_states:
            raise IndexOutOfRangeError(f'Index {index} out of range 0..{self.total_states - 1}')
        return int(self.levels[index]), int(self.jobs[index])

    def setup_count(self, i: int, j: int) -> int:
        """Number of instances in setup in state ``(i, j)``: ``min(max(j - n_i, 0), N - n_i)``"""
        if not self.contains(i, j):
            raise StateNotFoundError(f'State ({i}, {j}) is not part of the state space!')
        n_i = self._n0 + i
        return min(max(j - n_i, 0), self._N - n_i)

    def first_job(self, i: int) -> int:
        """Smallest job count of level ``i``"""
        if not 0 <= i <= self._k:
            raise StateNotFoundError(f'Level {i} out of range 0..{self._k}')
        return self._first_job[i]

    def level_size(self, i: int) -> int:
        return self._K - self.first_job(i) + 1

    def level_slice(self, i: int) -> slice:
        start = self.level_offsets[i]
        return slice(start, start + self._K - self.first_job(i) + 1)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        for i in range(self._k + 1):
            for j in range(self._first_job[i], self._K + 1):
                yield i, j

    def __len__(self) -> int:
        return self.total_states

    def __contains__(self, item) -> bool:
        try:
            i, j = item
        except (TypeError, ValueError):
            return False
        return self.contains(i, j)

    def __repr__(self) -> str:
        return f'<{self.__class__.__name__:s} n0={self._n0:d} k={self._k:d} K={self._K:d} states={self.total_states:d}>'


def build_state_space(params: SystemParams) -> StateSpace:
    """Create the state space for a validated configuration"""
    return StateSpace(params)
