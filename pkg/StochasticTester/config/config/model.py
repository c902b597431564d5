from typing import Literal, Optional

from pydantic import BaseModel, Field, validator


class ConfigModel(BaseModel):
    enumeration_bound: int = Field(20, alias='Exhaustive enumeration bound')
    exhaustive_cut_bound: int = Field(16, alias='Edge connectivity cross-check bound')

    default_trials: int = Field(5000, alias='Default trials')
    default_threads: int = Field(4, alias='Default threads')
    max_threads: int = Field(32, alias='Max threads')
    grid_ratio: float = Field(1.25, alias='Threshold grid ratio')
    c_const: float = Field(2.0, alias='Probability constant c')

    budget_factor: int = Field(8, alias='Message budget factor')
    conn_alpha: int = Field(4, alias='Conn tester round slope')
    conn_beta: int = Field(8, alias='Conn tester round offset')
    kconn_gamma: float = Field(8.0, alias='Kconn repetition constant')
    kconn_window_slack: int = Field(6, alias='Kconn window slack')

    log_level: Literal['TRACE', 'DEBUG', 'INFO', 'SUCCESS', 'WARNING', 'ERROR'] = Field('INFO', alias='Log level')
    log_file: Optional[str] = Field(None, alias='Log file')
    output_dir: str = Field('data/StochasticTester', alias='Output directory')

    class Config:
        validate_assignment = True
        allow_population_by_field_name = True

    @validator('enumeration_bound')
    def enumeration_bound_in_range(cls, v):
        if not 1 <= v <= 24:
            raise ValueError('enumeration bound must lie in [1, 24]')
        return v

    @validator('exhaustive_cut_bound')
    def cut_bound_in_range(cls, v):
        if not 2 <= v <= 20:
            raise ValueError('cross-check bound must lie in [2, 20]')
        return v

    @validator('default_trials', 'default_threads', 'max_threads', 'budget_factor', 'conn_alpha')
    def positive(cls, v):
        if v < 1:
            raise ValueError('must be at least 1')
        return v

    @validator('conn_beta')
    def non_negative(cls, v):
        if v < 0:
            raise ValueError('must be non-negative')
        return v

    @validator('grid_ratio')
    def ratio_above_one(cls, v):
        if v <= 1:
            raise ValueError('grid ratio must exceed 1')
        return v

    @validator('c_const')
    def c_above_one(cls, v):
        if v <= 1:
            raise ValueError('the constant c must exceed 1')
        return v

    @validator('kconn_gamma')
    def gamma_positive(cls, v):
        if v <= 0:
            raise ValueError('repetition constant must be positive')
        return v

    @validator('kconn_window_slack')
    def slack_fits_notify(cls, v):
        if v < 2:
            raise ValueError('window slack must be at least 2')
        return v

    @property
    def alias_dict(self):
        return {v.alias: k for k, v in self.__fields__.items()}

    def update(self, **kwargs):
        for key, value in kwargs.items():
            if key in self.__fields__:
                self.__setattr__(key, value)
            elif key in self.alias_dict:
                self.__setattr__(self.alias_dict[key], value)
