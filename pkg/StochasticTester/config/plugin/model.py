from typing import Any, Dict, List, Optional

from pydantic import BaseModel


class PluginMetadata(BaseModel):
    name: str
    """plugin name"""
    description: str
    """plugin description"""
    usage: str
    """plugin usage"""
    extra: Dict[str, Any] = {}
    """priority, show..."""


class CommandInfo(BaseModel):
    pm_name: str
    """command name"""
    pm_description: Optional[str]
    """command description"""
    pm_usage: Optional[str]
    """command usage"""
    pm_priority: int = 99
    """command priority"""
    pm_show: bool = True
    """whether it is listed in the help"""


class PluginInfo(BaseModel):
    name: str
    """plugin name"""
    module_name: str
    """plugin module name"""
    description: Optional[str]
    """plugin description"""
    usage: Optional[str]
    """plugin usage"""
    show: bool = True
    """whether it is listed in the help"""
    priority: int = 99
    """display priority"""
    commands: List[CommandInfo] = []
    """command list"""
