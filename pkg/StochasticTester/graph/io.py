from pathlib import Path
from typing import Union

from StochasticTester.utils.exc import DomainError
from .models import Graph


def _parse_pair(line: str, lineno: int):
    parts = line.split()
    if len(parts) != 2:
        raise DomainError(f'line {lineno}: expected two integers, got {line!r}')
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise DomainError(f'line {lineno}: expected two integers, got {line!r}') from None


def parse_graph(text: str) -> Graph:
    """
    Parse the text format: a header line ``n m`` then m lines ``u v`` with u < v
        :raise DomainError: malformed header, u >= v, duplicates or a wrong edge count
    """
    lines = [line.strip() for line in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    if not lines:
        raise DomainError('empty graph file')
    n, m = _parse_pair(lines[0], 1)
    if n < 1 or m < 0:
        raise DomainError(f'line 1: invalid header {lines[0]!r}', 'n >= 1 and m >= 0')
    body = lines[1:]
    if len(body) != m:
        raise DomainError(f'header announces {m} edges but {len(body)} edge lines follow')
    edges = []
    for lineno, line in enumerate(body, start=2):
        u, v = _parse_pair(line, lineno)
        if u == v:
            raise DomainError(f'line {lineno}: self-loop ({u}, {v})', 'no self-loops')
        if u > v:
            raise DomainError(f'line {lineno}: edge ({u}, {v}) is not canonical', 'u < v')
        edges.append((u, v))
    return Graph(n, edges)


def format_graph(graph: Graph) -> str:
    lines = [f'{graph.n} {graph.m}']
    lines.extend(f'{u} {v}' for u, v in graph.edges)
    return '\n'.join(lines) + '\n'


def load_graph(path: Union[Path, str]) -> Graph:
    path = Path(path)
    if not path.exists():
        raise DomainError(f'graph file {path} does not exist')
    try:
        text = path.read_text(encoding='ascii')
    except UnicodeDecodeError:
        raise DomainError(f'graph file {path} is not ASCII') from None
    return parse_graph(text)


def save_graph(graph: Graph, path: Union[Path, str]):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(format_graph(graph).encode('ascii'))
