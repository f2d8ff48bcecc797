from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import BaseModel, ConfigDict, field_validator, ValidationError

from pyscaleq.errors import ConfigFileError
from pyscaleq.model.params import DEFAULT_ALPHA, DEFAULT_K, DEFAULT_K_CAPACITY, DEFAULT_LAMBDA, DEFAULT_MU, \
    DEFAULT_N0

PARAM_NAMES = ('lambda', 'mu', 'alpha', 'n0', 'k', 'K')

DEFAULT_PARAMS: Dict[str, Union[int, float]] = {
    'lambda': DEFAULT_LAMBDA, 'mu': DEFAULT_MU, 'alpha': DEFAULT_ALPHA,
    'n0': DEFAULT_N0, 'k': DEFAULT_K, 'K': DEFAULT_K_CAPACITY,
}


class ConfigFile(BaseModel):
    """JSON configuration file, every section is optional and may be partial"""
    model_config = ConfigDict(extra='forbid', frozen=True)

    params: Dict[str, Union[int, float]] = {}
    sim: Dict[str, Any] = {}
    cost: Dict[str, Any] = {}

    @field_validator('params')
    @classmethod
    def _check_param_names(cls, value: Dict[str, Union[int, float]]) -> Dict[str, Union[int, float]]:
        unknown = set(value) - set(PARAM_NAMES)
        if unknown:
            raise ConfigFileError(f'Unknown model parameters: {", ".join(sorted(unknown))}')
        return value


def load_config_file(path: Optional[Path]) -> ConfigFile:
    if path is None:
        return ConfigFile()

    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise ConfigFileError(f'Could not read config file {path}: {e}') from None

    try:
        return ConfigFile.model_validate_json(text)
    except ValidationError as e:
        raise ConfigFileError(f'Invalid config file {path}: {e}') from None


def merge(*layers: Dict[str, Any]) -> Dict[str, Any]:
    """Merge dicts, later layers win and ``None`` values are skipped"""
    ret: Dict[str, Any] = {}
    for layer in layers:
        ret.update({name: value for name, value in layer.items() if value is not None})
    return ret
