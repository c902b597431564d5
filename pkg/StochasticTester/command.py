"""
Command line surface. Subcommands live in the plugin packages and are registered
through on_command, which records each one in the plugin manager.
"""
import importlib
import pkgutil
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import click
from pydantic import ValidationError

from StochasticTester.config import CommandInfo, ConfigManager, PluginManager, config
from StochasticTester.utils import __version__, logger, setup_logging
from StochasticTester.utils.logger import escape_markup
from StochasticTester.utils.exc import StochasticError
from StochasticTester.utils.files import dump_json, format_csv, save_csv, save_json

USAGE_EXIT_CODE = 64


class StochasticGroup(click.Group):

    def format_epilog(self, ctx: click.Context, formatter: click.HelpFormatter) -> None:
        text = PluginManager.help_text()
        if text:
            formatter.write_paragraph()
            with formatter.section('Plugins'):
                formatter.write_text(text)


@click.group(cls=StochasticGroup)
@click.version_option(__version__, prog_name='stochastic-tester')
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None,
              help='yaml file merged into the configuration')
@click.option('--set', 'overrides', multiple=True, metavar='KEY=VALUE',
              help='override one configuration item, repeatable')
@click.option('--log-level', default=None,
              type=click.Choice(['TRACE', 'DEBUG', 'INFO', 'SUCCESS', 'WARNING', 'ERROR'], case_sensitive=False))
@click.option('--log-file', default=None, help='also write logs to this file')
def cli(config_path: Optional[str], overrides: Sequence[str], log_level: Optional[str], log_file: Optional[str]):
    """CONGEST simulator and stochastic-distance testers"""
    if config_path:
        ConfigManager.load(config_path)
    for item in overrides:
        key, sep, value = item.partition('=')
        if not sep:
            raise click.BadParameter(f'expected KEY=VALUE, got {item!r}', param_hint='--set')
        ConfigManager.set_config(key.strip(), value.strip())
    if log_level:
        ConfigManager.set_config('log_level', log_level.upper())
    if log_file:
        ConfigManager.set_config('log_file', log_file)
    setup_logging(config.log_level, config.log_file)


def on_command(cmd: str, state: dict = None, *args, **kwargs) -> Callable:
    """
    Register a subcommand and record it in the plugin manager
        :param cmd: subcommand name
        :param state: pm_name, pm_description, pm_usage, pm_priority
    """
    if state is None:
        state = {}
    if 'pm_name' not in state:
        state['pm_name'] = cmd

    def decorator(func: Callable) -> click.Command:
        command = cli.command(cmd, help=state.get('pm_description'), *args, **kwargs)(func)
        PluginManager.add_command(func.__module__, CommandInfo.parse_obj(state))
        return command

    return decorator


def load_plugins(plugin_dir: Union[Path, str]) -> List[str]:
    """
    Import every plugin package under plugin_dir and register its __plugin_meta__
        :param plugin_dir: directory holding the plugin packages
        :return: loaded module names
    """
    plugin_dir = Path(plugin_dir)
    package = 'StochasticTester.plugins'
    loaded = []
    for module_info in sorted(pkgutil.iter_modules([str(plugin_dir)]), key=lambda m: m.name):
        if not module_info.ispkg or module_info.name.startswith('_'):
            continue
        module = importlib.import_module(f'{package}.{module_info.name}')
        if metadata := getattr(module, '__plugin_meta__', None):
            PluginManager.register(module.__name__, metadata)
        loaded.append(module.__name__)
    return loaded


def seed_option(func: Callable) -> Callable:
    return click.option('--seed', type=int, required=True, help='master seed, mandatory for stochastic runs')(func)


def out_option(func: Callable) -> Callable:
    return click.option('--out', type=click.Path(dir_okay=False), default=None,
                        help='output file, stdout when omitted')(func)


def threads_option(func: Callable) -> Callable:
    return click.option('--threads', type=click.IntRange(min=1), default=None,
                        help='worker threads, the configured default when omitted')(func)


def resolve_threads(threads: Optional[int]) -> int:
    threads = config.default_threads if threads is None else threads
    if threads > config.max_threads:
        raise click.BadParameter(f'at most {config.max_threads} threads', param_hint='--threads')
    return threads


def resolve_trials(trials: Optional[int]) -> int:
    return config.default_trials if trials is None else trials


def log_resolved_config(command: str, **params: Any):
    """Every run logs the resolved configuration together with its own parameters and seeds"""
    logger.info(command, 'resolved config ', param={**config.dict(), **params})


def emit_json(data: Dict[str, Any], out: Optional[str]):
    if out:
        save_json(data, out)
    else:
        click.echo(dump_json(data))


def emit_csv(header: Sequence[str], rows: Sequence[Sequence], out: Optional[str]):
    if out:
        save_csv(header, rows, out)
    else:
        click.echo(format_csv(header, rows), nl=False)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Dispatch one command line
        :return: 0 on success, 2 on domain errors, 3 on capacity errors, 64 on usage errors, 1 otherwise
    """
    snapshot = config.dict()
    try:
        result = cli.main(args=list(argv) if argv is not None else None,
                          prog_name='stochastic-tester',
                          standalone_mode=False)
        return result if isinstance(result, int) else 0
    except click.UsageError as e:
        e.show()
        return USAGE_EXIT_CODE
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        return 1
    except ValidationError as e:
        logger.warning('CLI', f'invalid report: {escape_markup(e)}', 'exit 2')
        return 2
    except StochasticError as e:
        logger.warning('CLI', f'{type(e).__name__}: {escape_markup(e)}', f'exit {e.exit_code}')
        click.echo(f'error: {e}', err=True)
        return e.exit_code
    finally:
        config.update(**snapshot)
        setup_logging(config.log_level, config.log_file)


if __name__ == '__main__':
    sys.exit(main())
