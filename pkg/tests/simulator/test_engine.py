import math
from typing import List, Tuple

import numpy as np
import pytest

from pyscaleq.model import SystemParams
from pyscaleq.simulator import SimConfig, simulate_once
from pyscaleq.simulator.engine import replication_streams


def test_state_validity(tiny_params: SystemParams):
    p = tiny_params.replace(lambda_=3)
    states: List[Tuple[float, int, int, int]] = []
    stats = simulate_once(p, SimConfig(horizon=5_000, seed=3), 0, lambda *args: states.append(args))

    assert len(states) > 10_000
    assert all(a[0] <= b[0] for a, b in zip(states, states[1:]))
    assert states[-1][0] <= 5_000

    seen_levels = set()
    for _, i, j, setups in states:
        n_i = p.n0 + i
        assert 0 <= i <= p.k
        assert 0 <= j <= p.K
        assert i == 0 or j >= n_i
        assert setups == min(max(j - n_i, 0), p.N - n_i)
        seen_levels.add(i)
    assert seen_levels == {0, 1, 2}

    assert stats.arrivals == stats.accepted + stats.blocked
    assert stats.blocked > 0
    assert 0 <= stats.S <= p.k
    assert 0 <= stats.L <= p.K
    assert stats.W >= stats.Wq >= 0
    assert stats.observed_time == 4_500


def test_conservation(tiny_params: SystemParams):
    p = tiny_params
    stats = simulate_once(p, SimConfig(horizon=40_000, seed=11), 0)
    lam_eff = p.lambda_ * (1 - stats.Pb)

    # Little's law over the observed window
    assert stats.L == pytest.approx(lam_eff * stats.W, rel=0.03)
    assert stats.accepted / stats.observed_time == pytest.approx(lam_eff, rel=0.03)
    assert stats.W - stats.Wq == pytest.approx(1 / p.mu, rel=0.03)


def test_deterministic(tiny_params: SystemParams):
    c = SimConfig(horizon=1_000, seed=5)
    assert simulate_once(tiny_params, c, 0) == simulate_once(tiny_params, c, 0)
    assert simulate_once(tiny_params, c, 0) != simulate_once(tiny_params, c, 1)
    assert simulate_once(tiny_params, c, 0) != simulate_once(tiny_params, c.model_copy(update={'seed': 6}), 0)


def test_streams():
    c = SimConfig(seed=1)
    first = [rng.random() for rng in replication_streams(c, 0)]
    second = [rng.random() for rng in replication_streams(c, 1)]
    assert len(set(first + second)) == 6
    assert first == [rng.random() for rng in replication_streams(c, 0)]


def test_light_load(tiny_params: SystemParams):
    stats = simulate_once(tiny_params.replace(lambda_=0.001), SimConfig(horizon=10_000, seed=2), 0)
    assert stats.S == 0
    assert stats.Wq == 0
    assert stats.blocked == 0
    assert stats.L < 0.01


def test_non_exponential(tiny_params: SystemParams):
    c = SimConfig(horizon=20_000, seed=4, service='deterministic', setup='erlang:3')
    stats = simulate_once(tiny_params, c, 0)
    assert stats.W - stats.Wq == pytest.approx(1, rel=0.02)
    assert 0 < stats.S <= tiny_params.k
    for name in ('L', 'W', 'Wq', 'Pb', 'S'):
        assert math.isfinite(getattr(stats, name))


def test_mean_override(tiny_params: SystemParams):
    # explicit means replace the model rates
    c = SimConfig(horizon=20_000, seed=4, service={'mean': 0.5})
    stats = simulate_once(tiny_params, c, 0)
    assert stats.W - stats.Wq == pytest.approx(0.5, rel=0.03)
    assert np.isfinite(stats.L)
