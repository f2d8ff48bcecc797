import math

import numpy as np
import pytest

from pyscaleq.model import SystemParams
from pyscaleq.reference import mmck_metrics
from pyscaleq.simulator import compare, Estimate, SimConfig, simulate
from pyscaleq.simulator.runner import half_width
from pyscaleq.solver import solve


def test_half_width():
    assert half_width([1.0]) is None
    assert half_width([]) is None
    assert half_width([2.0, 2.0, 2.0]) == 0

    # t(0.975, 1) = 12.706
    assert half_width([0.0, 2.0]) == pytest.approx(12.7062047, rel=1e-6)

    e = Estimate(mean=1, half_width=0.5)
    assert (e.low, e.high) == (0.5, 1.5)
    e = Estimate(mean=1, half_width=None)
    assert (e.low, e.high) == (1, 1)


def test_aggregation(tiny_params: SystemParams):
    result = simulate(tiny_params, SimConfig(horizon=2_000, replications=4, seed=1))
    reps = result.replications
    assert [r.index for r in reps] == [0, 1, 2, 3]

    assert result.L.mean == pytest.approx(float(np.mean([r.L for r in reps])), rel=1e-15)
    assert result.S.mean == pytest.approx(float(np.mean([r.S for r in reps])), rel=1e-15)
    assert result.accepted_jobs == sum(r.accepted for r in reps)
    assert result.blocked_jobs == sum(r.blocked for r in reps)
    assert result.Pb.mean == result.blocked_jobs / (result.accepted_jobs + result.blocked_jobs)
    assert result.Pb.half_width == half_width([r.Pb for r in reps])

    for name in ('L', 'W', 'Wq', 'Pb', 'S'):
        assert result.estimate(name).half_width > 0
    assert result.metrics().Wq == result.Wq.mean
    assert result.config.interarrival.mean == pytest.approx(1 / 1.5)


def test_single_replication(tiny_params: SystemParams):
    result = simulate(tiny_params, SimConfig(horizon=500, replications=1))
    assert result.L.half_width is None
    assert not compare(solve(tiny_params), result).all_covered


def test_determinism(tiny_params: SystemParams):
    c = SimConfig(horizon=1_000, replications=3, seed=7)
    a = simulate(tiny_params, c)
    assert a == simulate(tiny_params, c)
    assert a.replications == simulate(tiny_params, c, workers=2).replications
    assert a != simulate(tiny_params, c.model_copy(update={'seed': 8}))


def test_blocking_without_instances():
    p = SystemParams(lambda_=4, mu=1, alpha=1, n0=3, k=0, K=5)
    result = simulate(p, SimConfig(horizon=20_000, replications=8, seed=3))
    expected = mmck_metrics(4, 1, 3, 5)

    assert result.S.mean == 0
    assert abs(result.Pb.mean - expected.Pb) <= 4 * result.Pb.half_width + 1e-3
    assert abs(result.L.mean - expected.L) <= 4 * result.L.half_width + 1e-3


def test_default_point_smoke(default_params: SystemParams):
    result = simulate(default_params, SimConfig(horizon=400, replications=2, seed=1, service='deterministic'))
    for name in ('L', 'W', 'Wq', 'Pb', 'S'):
        assert math.isfinite(result.estimate(name).mean)
    assert 0 <= result.S.mean <= 28
    assert result.Wq.mean >= 0


@pytest.mark.slow
def test_default_point(default_params: SystemParams):
    result = simulate(default_params, SimConfig(horizon=30_000, replications=10, seed=1), workers=4)
    expected = solve(default_params).metrics

    assert abs(result.Wq.mean - expected.Wq) <= 4 * result.Wq.half_width + 0.05
    assert abs(result.S.mean - expected.S) <= 4 * result.S.half_width + 0.05 * expected.S
