from typing import Final, Tuple

import numpy as np

from pyscaleq.errors import InvalidDistributionError

from .state_space import StateSpace

SUM_TOLERANCE: Final = 1e-12


class StationaryDistribution:
    """Normalized probabilities over a :class:`StateSpace` (flat layout)"""
    __slots__ = ('state_space', 'pi')

    def __init__(self, state_space: StateSpace, pi: np.ndarray):
        pi = np.array(pi, dtype=np.float64)

        if pi.shape != (state_space.total_states, ):
            raise InvalidDistributionError(
                f'Expected {state_space.total_states:d} probabilities but got shape {pi.shape}')
        if not np.all(np.isfinite(pi)) or np.any(pi < 0):
            raise InvalidDistributionError('Probabilities must be finite and >= 0!')
        total = float(pi.sum())
        if abs(total - 1) > SUM_TOLERANCE:
            raise InvalidDistributionError(f'Probabilities must sum to 1: {total:.17g}')

        pi.flags.writeable = False
        self.state_space: Final = state_space
        self.pi: Final = pi

    @classmethod
    def from_masses(cls, state_space: StateSpace, masses: np.ndarray) -> 'StationaryDistribution':
        """Normalize unnormalized non-negative masses"""
        masses = np.asarray(masses, dtype=np.float64)
        total = masses.sum()
        if not np.isfinite(total) or total <= 0:
            raise InvalidDistributionError(f'Masses can not be normalized, sum: {total}')
        pi = masses / total
        # one correction step keeps the sum within the tolerance even for long vectors
        pi /= pi.sum()
        return cls(state_space, pi)

    def probability(self, i: int, j: int) -> float:
        return float(self.pi[self.state_space.encode(i, j)])

    def level(self, i: int) -> np.ndarray:
        """Probabilities of level ``i`` ordered by job count, starting with ``j = n_i`` (``j = 0`` for level 0)"""
        return self.pi[self.state_space.level_slice(i)]

    def jobs_marginal(self) -> np.ndarray:
        """Probability of ``j`` jobs in the system for ``j = 0 .. K``"""
        return np.bincount(self.state_space.jobs, weights=self.pi, minlength=self.state_space.params.K + 1)

    def level_marginal(self) -> np.ndarray:
        """Probability of ``i`` active dynamic instances for ``i = 0 .. k``"""
        return np.bincount(self.state_space.levels, weights=self.pi, minlength=self.state_space.params.k + 1)

    def __getitem__(self, item: Tuple[int, int]) -> float:
        i, j = item
        return self.probability(i, j)

    def __len__(self) -> int:
        return len(self.pi)

    def __repr__(self) -> str:
        return f'<{self.__class__.__name__:s} states={len(self.pi):d}>'
