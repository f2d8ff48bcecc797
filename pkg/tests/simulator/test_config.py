import math

import pytest
from pydantic import ValidationError

from pyscaleq.errors import DistributionSpecError, SimConfigError
from pyscaleq.model import SystemParams
from pyscaleq.simulator import SimConfig
from pyscaleq.variates import DistributionSpec


def test_defaults():
    c = SimConfig()
    assert c.horizon == 300_000
    assert c.replications == 30
    assert c.seed == 0
    assert c.warmup is None
    assert c.effective_warmup == 30_000
    assert c.observed_time == 270_000
    assert c.is_exponential

    c = SimConfig(horizon=100, warmup=0)
    assert c.effective_warmup == 0
    assert c.observed_time == 100


@pytest.mark.parametrize('kwargs', [
    {'horizon': 0}, {'horizon': -5}, {'horizon': math.inf}, {'horizon': 10, 'warmup': 10},
    {'horizon': 10, 'warmup': -1},
])
def test_invalid_times(kwargs):
    with pytest.raises(SimConfigError):
        SimConfig(**kwargs)


def test_invalid_fields():
    for kwargs in ({'replications': 0}, {'seed': -1}, {'seed': 2 ** 64}, {'workers': 2}):
        with pytest.raises(ValidationError):
            SimConfig(**kwargs)

    with pytest.raises(DistributionSpecError):
        SimConfig(service='erlang')


def test_distributions():
    c = SimConfig(service='erlang:5', setup={'family': 'deterministic'})
    assert c.service == DistributionSpec.parse('erlang:5')
    assert c.setup.family == 'deterministic'
    assert c.interarrival.is_exponential
    assert not c.is_exponential


def test_bound(tiny_params: SystemParams):
    c = SimConfig(service='erlang:5', setup=DistributionSpec(mean=7)).bound(tiny_params)
    assert c.interarrival.mean == pytest.approx(1 / 1.5)
    assert c.service.mean == 1
    assert c.service.param == 5
    assert c.setup.mean == 7
    assert c.bound(tiny_params) == c
