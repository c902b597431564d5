from pathlib import Path

from StochasticTester.command import cli, load_plugins, main
from StochasticTester.config import PluginManager
from StochasticTester.utils import __version__, logger

PLUGINS = load_plugins(Path(__file__).parent / 'plugins')

__all__ = [
    'PLUGINS',
    'PluginManager',
    'cli',
    'main',
    '__version__',
]
