import math
from typing import Dict, Final, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from pyscaleq.errors import CostSpecError
from pyscaleq.model import PerformanceMetrics

DELTA_TOLERANCE: Final = 1e-12


class CostSpec(BaseModel):
    """Weights and normalizers of the cost ``C = w1 * Wq + w2 * S``.

    ``delta``, ``s_bar`` and ``wq_bar`` drive the threshold ratio selection,
    ``w1``, ``w2`` and ``wq_limit`` the constrained minimization.
    """
    model_config = ConfigDict(extra='forbid', frozen=True)

    w1: Optional[float] = Field(None, ge=0, allow_inf_nan=False)
    w2: Optional[float] = Field(None, ge=0, allow_inf_nan=False)
    delta: Optional[float] = Field(None, ge=0)
    s_bar: Optional[float] = Field(None, gt=0, allow_inf_nan=False)
    wq_bar: Optional[float] = Field(None, gt=0, allow_inf_nan=False)
    wq_limit: float = Field(math.inf, gt=0)
    extra_weights: Dict[Literal['L', 'W', 'Pb'], float] = Field(default_factory=dict)

    @model_validator(mode='after')
    def _validate(self) -> 'CostSpec':
        if math.isnan(self.wq_limit):
            raise CostSpecError('wq_limit must be a number')
        if self.delta is not None and math.isnan(self.delta):
            raise CostSpecError('delta must be a number')
        if (self.w1 is None) != (self.w2 is None):
            raise CostSpecError('Weights w1 and w2 must be given together')

        if self.delta is not None and self.w1 is not None and self.w1 > 0:
            expected = self.w2 / self.w1
            if not math.isclose(self.delta, expected, rel_tol=DELTA_TOLERANCE, abs_tol=DELTA_TOLERANCE):
                raise CostSpecError(f'delta must equal w2 / w1: delta={self.delta}, w2 / w1={expected}')
        return self

    @property
    def has_weights(self) -> bool:
        return self.w1 is not None

    @property
    def derived_delta(self) -> float:
        """``delta`` as given or derived from ``w2 / w1``"""
        if self.delta is not None:
            return self.delta
        if self.w1 is None:
            raise CostSpecError('Either delta or the weights w1 and w2 are required')
        if not self.w1 > 0:
            raise CostSpecError(f'delta can only be derived for w1 > 0: {self.w1}')
        return self.w2 / self.w1

    def metric_weights(self) -> Dict[str, float]:
        """Weight per metric name, the two default terms plus ``extra_weights``"""
        if not self.has_weights:
            raise CostSpecError('Weights w1 and w2 are required to evaluate the cost')
        weights = {'Wq': self.w1, 'S': self.w2}
        for name, value in self.extra_weights.items():
            weights[name] = weights.get(name, 0.0) + value
        return weights


def cost(metrics: PerformanceMetrics, spec: CostSpec) -> float:
    """Weighted sum of the metrics, ``w1 * Wq + w2 * S`` unless extra terms are configured

    :param metrics: evaluated metrics
    :param spec: weights
    """
    values = metrics.as_dict()
    return sum(weight * values[name] for name, weight in spec.metric_weights().items())
