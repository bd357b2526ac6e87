"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class TableFormatError(DomainError):
    """A delimited energy table could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConvergenceError(RuntimeError):
    """An iterative procedure hit its cap before meeting its tolerance.

    ``state`` carries the best result reached so far, so callers can still
    inspect it.
    """

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state
