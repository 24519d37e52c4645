"""Exception hierarchy shared by every module.

The CLI maps these onto process exit codes, so new error conditions
should reuse one of the classes below rather than raising bare
ValueError/ZeroDivisionError.
"""


class CyclohouseError(Exception):
    """Base class for all library errors."""


class DomainError(CyclohouseError):
    """Input outside an operation's mathematical domain (exit code 1)."""


class ParseError(CyclohouseError):
    """Syntax error in the expression grammar (exit code 2)."""

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected:
            detail += " (expected " + " | ".join(expected) + ")"
        super().__init__(detail)


class ResourceLimitError(CyclohouseError):
    """A configurable expansion/search ceiling was hit (exit code 3)."""


class UndecidedError(CyclohouseError):
    """Precision cap reached before the question could be decided (exit code 4)."""
