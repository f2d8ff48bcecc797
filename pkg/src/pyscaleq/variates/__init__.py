from .distribution_spec import DistributionSpec
from .sampler_base import SamplerBase, VariateStream
from .samplers import DeterministicSampler, ErlangSampler, ExponentialSampler, GammaSampler, ParetoSampler, \
    TruncatedNormalSampler, UniformSampler
