import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from pyscaleq.model import SystemParams


def enumerate_states(params: SystemParams) -> List[Tuple[int, int]]:
    states = [(0, j) for j in range(params.K + 1)]
    for i in range(1, params.k + 1):
        states.extend((i, j) for j in range(params.n0 + i, params.K + 1))
    return states


def out_arcs(params: SystemParams, i: int, j: int) -> Dict[Tuple[int, int], float]:
    """Transitions of state (i, j) written down directly from the model description"""
    n_i = params.n0 + i
    arcs: Dict[Tuple[int, int], float] = {}
    if j < params.K:
        arcs[(i, j + 1)] = params.lambda_

    if i == 0:
        if j > 0:
            arcs[(0, j - 1)] = min(j, params.n0) * params.mu
    elif j == n_i:
        arcs[(i - 1, j - 1)] = n_i * params.mu
    else:
        arcs[(i, j - 1)] = n_i * params.mu

    setups = min(max(j - n_i, 0), params.N - n_i)
    if setups:
        arcs[(i + 1, j)] = setups * params.alpha
    return arcs


def brute_force_distribution(params: SystemParams) -> Dict[Tuple[int, int], float]:
    """Least squares solution of the balance equations on an independently built generator"""
    states = enumerate_states(params)
    pos = {s: idx for idx, s in enumerate(states)}
    n = len(states)

    q = np.zeros((n, n))
    for s in states:
        for dst, rate in out_arcs(params, *s).items():
            q[pos[s], pos[dst]] += rate
            q[pos[s], pos[s]] -= rate

    a = np.vstack([q.T, np.ones((1, n))])
    rhs = np.zeros(n + 1)
    rhs[-1] = 1
    pi, *_ = np.linalg.lstsq(a, rhs, rcond=None)
    return {s: float(pi[pos[s]]) for s in states}


def mmck(lambda_: float, mu: float, c: int, K: int) -> Dict[str, float]:
    """Textbook M/M/c/K with log factorials"""
    a = lambda_ / mu
    log_terms = []
    for n in range(K + 1):
        if n <= c:
            log_terms.append(n * math.log(a) - math.lgamma(n + 1))
        else:
            log_terms.append(n * math.log(a) - math.lgamma(c + 1) - (n - c) * math.log(c))
    top = max(log_terms)
    weights = [math.exp(t - top) for t in log_terms]
    total = sum(weights)
    p = [w / total for w in weights]

    L = sum(n * pn for n, pn in enumerate(p))
    Lq = sum((n - c) * pn for n, pn in enumerate(p) if n > c)
    Pb = p[K]
    lam_eff = lambda_ * (1 - Pb)
    return {'L': L, 'Wq': Lq / lam_eff, 'W': L / lam_eff, 'Pb': Pb}


def algorithm1_oracle(table: Sequence[Tuple[float, float]], s_bar: float, wq_bar: float, delta: float) -> int:
    """table[k] = (S, Wq)"""
    if delta == math.inf:
        return len(table) - 1
    k = 0
    while k < len(table):
        s, wq = table[k]
        if wq == 0:
            return k
        if (s / s_bar) / (wq / wq_bar) >= delta:
            return k
        k += 1
    return len(table) - 1


def argmin_oracle(table: Sequence[Tuple[float, float]], w1: float, w2: float,
                  wq_limit: float = math.inf) -> Tuple[int, bool]:
    """table[k] = (S, Wq), returns (k, feasible)"""
    best: Optional[int] = None
    for k, (s, wq) in enumerate(table):
        if not wq < wq_limit:
            continue
        if best is None or w1 * wq + w2 * s < w1 * table[best][1] + w2 * table[best][0]:
            best = k
    if best is not None:
        return best, True

    smallest = min(wq for _, wq in table)
    return [wq for _, wq in table].index(smallest), False
