import numpy as np
import pytest

from pyscaleq.errors import UndefinedMetricError
from pyscaleq.model import build_state_space, StationaryDistribution, SystemParams
from pyscaleq.solver import dense_oracle, instance_breakdown, metrics, solve
from tests.helper import mmck


def test_default_point(default_params: SystemParams):
    report = solve(default_params)
    assert report.metrics.Wq == pytest.approx(1.17, abs=0.05)
    assert report.max_balance_residual <= 1e-8
    assert report.duration < 0.1


@pytest.mark.parametrize('lambda_', [20, 40, 60, 110, 160])
def test_closed_form(lambda_):
    p = SystemParams(lambda_=lambda_, mu=1, alpha=0.005, n0=110, k=0, K=250)
    m = solve(p).metrics
    expected = mmck(lambda_, 1, 110, 250)

    assert m.L == pytest.approx(expected['L'], rel=1e-10)
    assert m.W == pytest.approx(expected['W'], rel=1e-10)
    assert m.Wq == pytest.approx(expected['Wq'], rel=1e-10)
    assert m.Wq > 0
    assert m.Pb == pytest.approx(expected['Pb'], rel=1e-10, abs=1e-300)
    assert m.S == 0


def test_against_oracle(tiny_params: SystemParams):
    report = solve(tiny_params)
    expected = metrics(dense_oracle(tiny_params), tiny_params)

    for name, value in report.metrics.as_dict().items():
        assert value == pytest.approx(getattr(expected, name), rel=1e-10, abs=1e-15), name


def test_identities(tiny_params: SystemParams):
    for lambda_ in (0.1, 1.5, 4, 20):
        p = tiny_params.replace(lambda_=lambda_)
        report = solve(p)
        m = report.metrics

        assert m.W - m.Wq == pytest.approx(1 / p.mu, rel=1e-12)
        assert 0 <= m.S <= p.k
        assert 0 <= m.Pb <= 1
        assert 0 <= m.L <= p.K
        assert m.Wq >= 0

        active, setup = instance_breakdown(report.distribution)
        assert active + setup == pytest.approx(m.S, rel=1e-12)
        assert active >= 0
        assert setup >= 0


def test_undefined():
    p = SystemParams(lambda_=1, mu=1, alpha=1, n0=1, k=0, K=1)
    d = StationaryDistribution(build_state_space(p), np.array([0.0, 1.0]))
    with pytest.raises(UndefinedMetricError):
        metrics(d, p)


def test_three_phases():
    p = SystemParams(lambda_=50, mu=1, alpha=0.005, n0=110, k=60, K=250)
    grid = list(range(50, 255, 5))
    results = [solve(p.replace(lambda_=lam)).metrics for lam in grid]
    wq = [m.Wq for m in results]
    s = [m.S for m in results]

    # light load is handled by the legacy block
    assert wq[0] < 0.01
    assert s[0] < 0.01

    # ascent, descent and re-ascent
    peak = next(idx for idx in range(1, len(wq) - 1) if wq[idx - 1] <= wq[idx] > max(wq[idx + 1], 0.01))
    low = min(range(peak, len(wq)), key=lambda idx: wq[idx])
    assert low < len(wq) - 1
    assert wq[peak] - wq[low] >= 0.1 * wq[peak]
    assert wq[-1] > wq[low]

    assert all(b >= a - 1e-12 for a, b in zip(s, s[1:]))


@pytest.mark.parametrize('lambda_', [50, 130, 250])
def test_three_phases_oracle(lambda_):
    p = SystemParams(lambda_=lambda_, mu=1, alpha=0.005, n0=110, k=60, K=250)
    report = solve(p)
    assert len(report.distribution) == 6881

    expected = metrics(dense_oracle(p), p)
    for name, value in report.metrics.as_dict().items():
        assert value == pytest.approx(getattr(expected, name), rel=1e-7, abs=1e-10), name


def test_saturation():
    p = SystemParams(lambda_=250, mu=1, alpha=0.005, n0=110, k=50, K=250)
    assert solve(p).metrics.S >= 0.95 * 50
