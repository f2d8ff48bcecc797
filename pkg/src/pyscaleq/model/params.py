from typing import Any, Final

from pydantic import BaseModel, ConfigDict, Field, model_validator, ValidationInfo

from pyscaleq.errors import InvalidCapacityError, InvalidInstanceCountError, InvalidLegacyCapacityError, \
    InvalidRateError, StateNotFoundError, UnknownParameterError

JSON_CONTEXT: Final = {'json_names': True}

# Defaults used throughout the evaluation of the model
DEFAULT_N0: Final = 110
DEFAULT_MU: Final = 1.0
DEFAULT_ALPHA: Final = 0.005
DEFAULT_K_CAPACITY: Final = 250
DEFAULT_LAMBDA: Final = 130.0
DEFAULT_K: Final = 28


def _check_rates(lambda_: float, mu: float, alpha: float):
    for name, value in (('lambda', lambda_), ('mu', mu), ('alpha', alpha)):
        if not value > 0:
            raise InvalidRateError(f'Rate {name} must be > 0: {value}')


def _check_legacy(n0: int):
    if n0 < 1:
        raise InvalidLegacyCapacityError(f'Legacy capacity must satisfy n0 >= 1: {n0}')


class BaseParams(BaseModel):
    """Model configuration without the number of dynamic instances.

    The optimizer varies ``k`` over ``0 .. K - n0`` on top of this.
    """
    model_config = ConfigDict(extra='forbid', frozen=True, populate_by_name=True, allow_inf_nan=False)

    lambda_: float = Field(alias='lambda')
    mu: float = DEFAULT_MU
    alpha: float = DEFAULT_ALPHA
    n0: int = DEFAULT_N0
    K: int = DEFAULT_K_CAPACITY

    @model_validator(mode='after')
    def _validate(self) -> 'BaseParams':
        _check_rates(self.lambda_, self.mu, self.alpha)
        _check_legacy(self.n0)
        if self.K < self.n0:
            raise InvalidCapacityError(f'System capacity must satisfy K >= n0: K={self.K}, n0={self.n0}')
        return self

    @property
    def k_max(self) -> int:
        return self.K - self.n0

    def with_k(self, k: int) -> 'SystemParams':
        """Create the full configuration for ``k`` dynamic instances

        :param k: number of dynamic instances
        """
        return SystemParams(lambda_=self.lambda_, mu=self.mu, alpha=self.alpha, n0=self.n0, k=k, K=self.K)

    def __repr__(self) -> str:
        return (f'<{self.__class__.__name__:s} lambda={self.lambda_:g} mu={self.mu:g} alpha={self.alpha:g} '
                f'n0={self.n0:d} K={self.K:d}>')


class SystemParams(BaseModel):
    """Full configuration of the legacy block plus ``k`` threshold controlled instances.

    The JSON representation uses exactly the field names ``lambda, mu, alpha, n0, k, K``.
    """
    model_config = ConfigDict(extra='forbid', frozen=True, populate_by_name=True, allow_inf_nan=False)

    lambda_: float = Field(alias='lambda')
    mu: float
    alpha: float
    n0: int
    k: int
    K: int

    @model_validator(mode='before')
    @classmethod
    def _json_names(cls, data: Any, info: ValidationInfo) -> Any:
        if info.context and info.context.get('json_names') and isinstance(data, dict) and 'lambda_' in data:
            raise UnknownParameterError('Unknown model parameter lambda_, the JSON name is lambda')
        return data

    @model_validator(mode='after')
    def _validate(self) -> 'SystemParams':
        _check_rates(self.lambda_, self.mu, self.alpha)
        _check_legacy(self.n0)
        if self.k < 0:
            raise InvalidInstanceCountError(f'Number of dynamic instances must satisfy k >= 0: {self.k}')
        if self.K < self.N:
            raise InvalidCapacityError(
                f'System capacity must satisfy K >= N (N = n0 + k): K={self.K}, N={self.N}')
        return self

    @property
    def N(self) -> int:
        return self.n0 + self.k

    @property
    def rho(self) -> float:
        return self.lambda_ / (self.N * self.mu)

    def n(self, i: int) -> int:
        """Number of servers which are able to serve when ``i`` dynamic instances are active"""
        if not 0 <= i <= self.k:
            raise StateNotFoundError(f'Level {i} out of range 0..{self.k}')
        return self.n0 + i

    def up_threshold(self, i: int) -> int:
        """Job count at which the ``i``-th instance starts its setup (U_i = n_i)"""
        if not 1 <= i <= self.k:
            raise StateNotFoundError(f'Instance {i} out of range 1..{self.k}')
        return self.n0 + i

    def down_threshold(self, i: int) -> int:
        """Job count at which the ``i``-th instance is powered off (D_i = n_{i-1})"""
        if not 1 <= i <= self.k:
            raise StateNotFoundError(f'Instance {i} out of range 1..{self.k}')
        return self.n0 + i - 1

    def without_k(self) -> BaseParams:
        return BaseParams(lambda_=self.lambda_, mu=self.mu, alpha=self.alpha, n0=self.n0, K=self.K)

    def replace(self, **kwargs) -> 'SystemParams':
        """Return a validated copy with some fields replaced (``lambda`` may be passed as ``lambda_``)"""
        data = self.model_dump()
        if 'lambda' in kwargs:
            kwargs['lambda_'] = kwargs.pop('lambda')
        data.update(kwargs)
        return SystemParams(**data)

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True)

    @classmethod
    def from_json(cls, text: str) -> 'SystemParams':
        return cls.model_validate_json(text, context=JSON_CONTEXT)

    def __repr__(self) -> str:
        return (f'<{self.__class__.__name__:s} lambda={self.lambda_:g} mu={self.mu:g} alpha={self.alpha:g} '
                f'n0={self.n0:d} k={self.k:d} K={self.K:d}>')
