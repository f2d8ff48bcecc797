from typing import Dict

from pydantic import BaseModel, ConfigDict


class PerformanceMetrics(BaseModel):
    """Long run metrics of one solved configuration

    ``L`` mean jobs in system, ``W`` / ``Wq`` mean response / queueing time of an accepted job,
    ``Pb`` blocking probability and ``S`` mean number of dynamic instances which are active or in setup.
    """
    model_config = ConfigDict(extra='forbid', frozen=True)

    L: float
    W: float
    Wq: float
    Pb: float
    S: float

    def as_dict(self) -> Dict[str, float]:
        return self.model_dump()
