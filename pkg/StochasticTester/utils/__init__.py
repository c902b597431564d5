from .logger import logger, setup_logging

__version__ = '1.0.0'

__all__ = [
    'logger',
    'setup_logging',
    '__version__'
]
