"""Exception hierarchy. Each error knows the CLI exit status it maps to."""

from typing import Any


class ForcingLabError(Exception):
    exit_code = 1


class InputError(ForcingLabError, ValueError):
    """Malformed or inconsistent input: unknown identifiers, cycles, bad documents."""

    exit_code = 2


class FormulaSyntaxError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


class PreconditionError(InputError):
    """An operation's standing assumption does not hold; `witness` says where."""

    def __init__(self, message: str, witness: Any = None):
        self.witness = witness
        super().__init__(message)


class ResourceError(ForcingLabError):
    exit_code = 3

    def __init__(self, message: str, cap: int, requested: int):
        self.cap = cap
        self.requested = requested
        super().__init__(f"{message}: {requested} exceeds cap {cap}")
