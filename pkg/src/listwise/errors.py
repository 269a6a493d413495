"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class ListwiseError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ListwiseError, ValueError):
    """Invalid user input: bad parameters, malformed matrices or files."""


class ParseError(InputError):
    """A delimited or mask file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(InputError):
    """A formula was evaluated outside the domain where it is defined."""


class EnumerationRefused(ListwiseError):
    """Exhaustive enumeration would exceed the combinatorial guard."""
