import math
from typing import Final, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from pyscaleq.errors import SimConfigError
from pyscaleq.model import SystemParams
from pyscaleq.variates import DistributionSpec

DEFAULT_HORIZON: Final = 300_000.0
DEFAULT_REPLICATIONS: Final = 30
DEFAULT_WARMUP_FRACTION: Final = 0.1


class SimConfig(BaseModel):
    """Run length, seed and duration distributions of a simulation.

    ``warmup`` defaults to a tenth of the horizon.
    """
    model_config = ConfigDict(extra='forbid', frozen=True)

    horizon: float = DEFAULT_HORIZON
    warmup: Optional[float] = None
    replications: int = Field(DEFAULT_REPLICATIONS, ge=1)
    seed: int = Field(0, ge=0, lt=2 ** 64)
    interarrival: DistributionSpec = DistributionSpec()
    service: DistributionSpec = DistributionSpec()
    setup: DistributionSpec = DistributionSpec()

    @model_validator(mode='after')
    def _validate(self) -> 'SimConfig':
        if not math.isfinite(self.horizon) or not self.horizon > 0:
            raise SimConfigError(f'horizon must be a finite value > 0: {self.horizon}')
        warmup = self.effective_warmup
        if not 0 <= warmup < self.horizon:
            raise SimConfigError(f'Simulation must satisfy horizon > warmup >= 0: '
                                 f'horizon={self.horizon}, warmup={warmup}')
        return self

    @property
    def effective_warmup(self) -> float:
        if self.warmup is None:
            return self.horizon * DEFAULT_WARMUP_FRACTION
        return self.warmup

    @property
    def observed_time(self) -> float:
        return self.horizon - self.effective_warmup

    @property
    def is_exponential(self) -> bool:
        return self.interarrival.is_exponential and self.service.is_exponential and self.setup.is_exponential

    def bound(self, params: SystemParams) -> 'SimConfig':
        """Fill in the means implied by the model rates where no explicit mean is configured"""
        return self.model_copy(update={
            'interarrival': self.interarrival.bind(1 / params.lambda_),
            'service': self.service.bind(1 / params.mu),
            'setup': self.setup.bind(1 / params.alpha),
        })
