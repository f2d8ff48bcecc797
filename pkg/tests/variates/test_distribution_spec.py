import pytest
from pydantic import ValidationError

from pyscaleq.errors import DistributionSpecError
from pyscaleq.variates import DistributionSpec, ErlangSampler, ExponentialSampler, TruncatedNormalSampler


@pytest.mark.parametrize('text, family, param', [
    ('exponential', 'exponential', None),
    ('Erlang:5', 'erlang', 5),
    (' gamma : 0.5', 'gamma', 0.5),
    ('uniform', 'uniform', None),
    ('truncated-normal:1.5', 'truncated-normal', 1.5),
    ('pareto:2.5', 'pareto', 2.5),
    ('deterministic', 'deterministic', None),
])
def test_parse(text, family, param):
    spec = DistributionSpec.parse(text)
    assert spec.family == family
    assert spec.param == param
    assert spec.mean is None
    assert DistributionSpec.model_validate(text) == spec


def test_str():
    assert str(DistributionSpec.parse('erlang:5')) == 'erlang:5'
    assert str(DistributionSpec()) == 'exponential'
    assert DistributionSpec().is_exponential
    assert not DistributionSpec.parse('deterministic').is_exponential


@pytest.mark.parametrize('text', [
    'weibull:2', 'erlang', 'erlang:x', 'erlang:0', 'erlang:1.5', 'gamma', 'pareto:1', 'uniform:2',
    'truncated-normal:3', 'exponential:2', 'deterministic:1',
])
def test_invalid(text):
    with pytest.raises(DistributionSpecError):
        DistributionSpec.parse(text)


def test_invalid_mean():
    with pytest.raises(ValidationError):
        DistributionSpec.parse('exponential', mean=0)
    with pytest.raises(ValidationError):
        DistributionSpec(family='exponential', unknown=1)


def test_bind():
    spec = DistributionSpec.parse('erlang:5')
    with pytest.raises(DistributionSpecError):
        spec.sampler()

    bound = spec.bind(0.5)
    assert bound.mean == 0.5
    assert spec.mean is None
    sampler = bound.sampler()
    assert isinstance(sampler, ErlangSampler)
    assert sampler.mean == 0.5
    assert sampler.shape == 5

    # explicit means win
    explicit = DistributionSpec.parse('exponential', mean=2)
    assert explicit.bind(0.5) is explicit
    assert isinstance(explicit.sampler(), ExponentialSampler)


def test_defaults():
    sampler = DistributionSpec.parse('truncated-normal').bind(1).sampler()
    assert isinstance(sampler, TruncatedNormalSampler)
    assert sampler.cv == 0.5
    assert DistributionSpec.parse('uniform').bind(1).sampler().half_width == 1.0
