import logging
import warnings
from typing import Final

import numpy as np
from scipy.linalg import LinAlgError, LinAlgWarning, lu_factor, lu_solve

from pyscaleq.errors import OracleSizeError, SingularGeneratorError
from pyscaleq.model import build_state_space, StateSpace, StationaryDistribution, SystemParams

from .transitions import transitions

log = logging.getLogger('pyscaleq.Oracle')


MAX_ORACLE_STATES: Final = 20_000


def generator_matrix(state_space: StateSpace) -> np.ndarray:
    """Dense infinitesimal generator ``Q`` of the chain"""
    n = state_space.total_states
    src, dst, rate = transitions(state_space)

    q = np.zeros((n, n), dtype=np.float64)
    np.add.at(q, (src, dst), rate)
    q[np.arange(n), np.arange(n)] = -q.sum(axis=1)
    return q


def dense_oracle(params: SystemParams, max_states: int = MAX_ORACLE_STATES) -> StationaryDistribution:
    """Solve ``pi Q = 0, sum(pi) = 1`` directly on the full generator.

    Only meant for validation: the cost is cubic in the number of states.

    :param params: model configuration
    :param max_states: refuse larger state spaces
    """
    space = build_state_space(params)
    n = space.total_states
    if n > max_states:
        raise OracleSizeError(f'Dense oracle refuses {n:d} states (limit {max_states:d})')

    # transposed balance equations, the last (redundant) one is replaced by the normalization
    system = generator_matrix(space).T
    system[-1, :] = 1.0
    rhs = np.zeros(n)
    rhs[-1] = 1.0

    try:
        with warnings.catch_warnings():
            warnings.simplefilter('error', LinAlgWarning)
            lu = lu_factor(system)
            pi = lu_solve(lu, rhs)
            # one step of iterative refinement
            pi += lu_solve(lu, rhs - system @ pi)
    except (LinAlgError, LinAlgWarning) as e:
        raise SingularGeneratorError(f'Generator system is singular: {e}') from None

    if not np.all(np.isfinite(pi)):
        raise SingularGeneratorError('Generator system produced non finite values!')

    # rounding may leave tiny negative entries
    smallest = float(pi.min())
    if smallest < 0:
        log.debug(f'Clipping negative oracle probability {smallest:.2e}')
        pi = np.maximum(pi, 0)

    return StationaryDistribution.from_masses(space, pi)
