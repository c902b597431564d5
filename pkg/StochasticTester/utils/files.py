try:
    import ujson as json
except ImportError:
    import json
import csv
import io
from pathlib import Path
from typing import Iterable, List, Sequence, Union

from ruamel.yaml import YAML


def load_json(path: Union[Path, str], encoding: str = 'utf-8'):
    """
    Read a local json file and return its data.
        :param path: file path
        :param encoding: encoding, utf-8 by default
        :return: data, or an empty dict when the file is missing
    """
    if isinstance(path, str):
        path = Path(path)
    return json.loads(path.read_text(encoding=encoding)) if path.exists() else {}


def save_json(data: dict, path: Union[Path, str] = None, encoding: str = 'utf-8'):
    """
    Save a json file
        :param data: json data
        :param path: target path
        :param encoding: encoding
    """
    if isinstance(path, str):
        path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open('w', encoding=encoding, newline='\n') as f:
        json.dump(data, f, ensure_ascii=False, indent=2)


def dump_json(data) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2)


def load_yaml(path: Union[Path, str], encoding: str = 'utf-8'):
    """
    Read a local yaml file and return a dict.
        :param path: file path
        :param encoding: encoding, utf-8 by default
        :return: dict, empty when the file is missing
    """
    if isinstance(path, str):
        path = Path(path)
    if not path.exists():
        return {}
    return YAML(typ='safe').load(path.read_text(encoding=encoding)) or {}


def save_yaml(data: dict, path: Union[Path, str] = None, encoding: str = 'utf-8'):
    """
    Save a yaml file
        :param data: data
        :param path: target path
        :param encoding: encoding
    """
    if isinstance(path, str):
        path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    yaml = YAML()
    yaml.indent(mapping=2, sequence=4, offset=2)
    yaml.allow_unicode = True
    with path.open('w', encoding=encoding) as f:
        yaml.dump(data, f)


def format_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    """
    Render rows as csv text with LF line endings
        :param header: column names
        :param rows: rows, already ordered
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def save_csv(header: Sequence[str], rows: Iterable[Sequence], path: Union[Path, str], encoding: str = 'utf-8'):
    if isinstance(path, str):
        path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(format_csv(header, rows).encode(encoding))


def load_csv(path: Union[Path, str], encoding: str = 'utf-8') -> List[dict]:
    if isinstance(path, str):
        path = Path(path)
    with path.open('r', encoding=encoding, newline='') as f:
        return list(csv.DictReader(f))
