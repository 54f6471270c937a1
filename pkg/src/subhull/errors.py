"""Exception types shared across the package."""


class SubhullError(Exception):
    """Base class for errors raised by this package."""


class ParseError(SubhullError):
    """Malformed spec file or word literal; carries the source position."""

    def __init__(self, message: str, filename: str = "<string>", line: int = 0):
        self.filename = filename
        self.line = line
        if line:
            message = f"{filename}:{line}: {message}"
        super().__init__(message)


class NotPrimitiveError(SubhullError):
    """The substitution matrix is not primitive; most analyses require it."""


class ResourceBudgetError(SubhullError):
    """A configured word-count or period-length budget was exhausted."""


class NumericError(SubhullError):
    """An iterative numeric routine failed to converge or an eigensolver broke."""
