from pathlib import Path
from typing import Any, Optional, Union

from pydantic import ValidationError

from StochasticTester.utils.exc import DomainError
from StochasticTester.utils.files import load_yaml, save_yaml
from StochasticTester.utils.path import STOCHASTIC_CONFIG
from .model import ConfigModel


class ConfigManager:
    if STOCHASTIC_CONFIG.exists():
        config = ConfigModel.parse_obj(load_yaml(STOCHASTIC_CONFIG))
    else:
        config = ConfigModel()

    @classmethod
    def load(cls, path: Union[Path, str]) -> ConfigModel:
        """
        Merge a yaml file into the live configuration
            :param path: yaml file keyed by field names or aliases
        """
        path = Path(path)
        if not path.exists():
            raise DomainError(f'config file {path} does not exist')
        data = load_yaml(path)
        if not isinstance(data, dict):
            raise DomainError(f'config file {path} must hold a mapping')
        for key, value in data.items():
            cls.set_config(key, value)
        return cls.config

    @classmethod
    def set_config(cls, config_name: str, value: Any):
        """
        Set one configuration item
            :param config_name: field name or alias
            :param value: new value, validated by the model
        """
        if config_name not in cls.config.__fields__ and config_name not in cls.config.alias_dict:
            raise DomainError(f'unknown config item {config_name}')
        try:
            cls.config.update(**{config_name: value})
        except ValidationError as e:
            raise DomainError(f'invalid value {value!r} for {config_name}', str(e.errors()[0]['msg'])) from e

    @classmethod
    def reset(cls):
        cls.config.update(**ConfigModel().dict())

    @classmethod
    def save(cls, path: Optional[Union[Path, str]] = None):
        save_yaml(cls.config.dict(by_alias=True), path or STOCHASTIC_CONFIG)


config = ConfigManager.config
