from typing import Dict, List

from StochasticTester.utils import logger
from .model import CommandInfo, PluginInfo, PluginMetadata


class PluginManager:
    plugins: Dict[str, PluginInfo] = {}

    @classmethod
    def register(cls, module_name: str, metadata: PluginMetadata) -> PluginInfo:
        """
        Record a plugin from its metadata
            :param module_name: module name of the plugin package
            :param metadata: the plugin's __plugin_meta__
        """
        existing = cls.plugins.get(module_name)
        if existing is None or existing.name == module_name:
            cls.plugins[module_name] = PluginInfo.parse_obj({
                'name':        metadata.name,
                'module_name': module_name,
                'description': metadata.description,
                'usage':       metadata.usage,
                'show':        metadata.extra.get('show', True),
                'priority':    metadata.extra.get('priority', 99),
                'commands':    existing.commands if existing else [],
            })
            logger.debug('Plugin manager', f'registered <m>{module_name}</m>')
        return cls.plugins[module_name]

    @classmethod
    def add_command(cls, module_name: str, command: CommandInfo):
        plugin = cls.plugins.get(module_name)
        if plugin is None:
            plugin = cls.plugins[module_name] = PluginInfo(name=module_name, module_name=module_name)
        if command.pm_name not in [c.pm_name for c in plugin.commands]:
            plugin.commands.append(command)

    @classmethod
    def get_plugin_list(cls) -> List[PluginInfo]:
        plugin_list = sorted(cls.plugins.values(), key=lambda x: x.priority)
        plugin_list = [p for p in plugin_list if p.show]
        for plugin in plugin_list:
            plugin.commands.sort(key=lambda x: x.pm_priority)
        return plugin_list

    @classmethod
    def help_text(cls) -> str:
        """Plugin overview appended to the CLI help"""
        lines = []
        for plugin in cls.get_plugin_list():
            lines.append(f'{plugin.name}: {plugin.description}')
            lines.extend(f'  {c.pm_name}  {c.pm_description or ""}'.rstrip()
                         for c in plugin.commands if c.pm_show)
        return '\n'.join(lines)
