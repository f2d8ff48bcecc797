from typing import Optional

import numpy as np

from pyscaleq.model import PerformanceMetrics


def mmck_distribution(lambda_: float, mu: float, c: int, K: int) -> np.ndarray:
    """Stationary distribution of the finite capacity multi-server queue M/M/c/K"""
    n = np.arange(1, K + 1)
    log_ratio = np.log(lambda_) - np.log(np.minimum(n, c) * mu)
    log_p = np.concatenate(([0.0], np.cumsum(log_ratio)))
    p = np.exp(log_p - log_p.max())
    return p / p.sum()


def mmck_metrics(lambda_: float, mu: float, c: int, K: int, legacy: Optional[int] = None) -> PerformanceMetrics:
    """Metrics of M/M/c/K; with ``legacy`` given S counts the busy servers above the legacy block"""
    p = mmck_distribution(lambda_, mu, c, K)
    n = np.arange(K + 1)

    L = float(np.dot(p, n))
    Pb = float(p[K])
    Wq = float(np.dot(p, np.maximum(n - c, 0))) / (lambda_ * (1 - Pb))
    S = 0.0 if legacy is None else float(np.dot(p, np.maximum(np.minimum(n, c) - legacy, 0)))
    return PerformanceMetrics(L=L, W=Wq + 1 / mu, Wq=Wq, Pb=Pb, S=S)


def erlang_b(c: int, offered_load: float) -> float:
    """Erlang loss probability for ``c`` servers and offered load ``lambda / mu``"""
    b = 1.0
    for n in range(1, c + 1):
        b = offered_load * b / (n + offered_load * b)
    return b
