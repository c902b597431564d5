from .config.manage import ConfigManager, ConfigModel, config
from .plugin.manage import PluginManager
from .plugin.model import CommandInfo, PluginInfo, PluginMetadata
