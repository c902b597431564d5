from typing import Any, Optional


class StochasticError(Exception):
    """Base error of the package"""

    exit_code: int = 1


class DomainError(StochasticError, ValueError):
    """A precondition on the inputs is violated"""

    exit_code = 2

    def __init__(self, message: str, constraint: Optional[str] = None, *args: object) -> None:
        super().__init__(message, constraint, *args)
        self.message = message
        self.constraint = constraint

    def __str__(self) -> str:
        if self.constraint:
            return f'{self.message} (violated: {self.constraint})'
        return self.message

    def __repr__(self) -> str:
        return f'<DomainError message={self.message}, constraint={self.constraint}>'


class CapacityError(StochasticError):
    """An exhaustive oracle was asked beyond its enumeration bound"""

    exit_code = 3

    def __init__(self, oracle: str, size: int, bound: int, *args: object) -> None:
        super().__init__(oracle, size, bound, *args)
        self.oracle = oracle
        self.size = size
        self.bound = bound

    def __str__(self) -> str:
        return f'{self.oracle}: n={self.size} exceeds the enumeration bound {self.bound}'

    def __repr__(self) -> str:
        return f'<CapacityError oracle={self.oracle}, size={self.size}, bound={self.bound}>'


class ProtocolViolation(StochasticError):
    """A node program broke the CONGEST contract"""

    def __init__(self, node: Any, round: int, reason: str, *args: object) -> None:
        super().__init__(node, round, reason, *args)
        self.node = node
        self.round = round
        self.reason = reason

    def __str__(self) -> str:
        return f'node {self.node} at round {self.round}: {self.reason}'

    def __repr__(self) -> str:
        return f'<ProtocolViolation node={self.node}, round={self.round}, reason={self.reason}>'


class IncompleteRunError(StochasticError):
    """A tester verdict was requested while some node is still undecided"""

    def __init__(self, undecided: int, *args: object) -> None:
        super().__init__(undecided, *args)
        self.undecided = undecided

    def __str__(self) -> str:
        return f'{self.undecided} node(s) are still undecided'


class SoundnessError(StochasticError):
    """A distributed rejection could not be re-verified against the oracles"""

    def __init__(self, root: Any, repetition: Optional[int], reason: str, *args: object) -> None:
        super().__init__(root, repetition, reason, *args)
        self.root = root
        self.repetition = repetition
        self.reason = reason

    def __str__(self) -> str:
        return f'witness of root {self.root} (repetition {self.repetition}) failed re-verification: {self.reason}'

    def __repr__(self) -> str:
        return f'<SoundnessError root={self.root}, repetition={self.repetition}, reason={self.reason}>'
