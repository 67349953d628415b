"""Shared exception types."""


class PreconditionError(ValueError):
    """An operation was asked for outside its supported range."""


class ConfigError(ValueError):
    """Malformed configuration or serialized input.

    Carries an optional 1-based line/column position for diagnostics.
    """

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)
