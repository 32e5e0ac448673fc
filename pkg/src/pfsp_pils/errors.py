class InvalidInputError(ValueError):
    """Malformed arguments: dimension mismatches, bad permutations, bad parameters."""


class InvalidStateError(RuntimeError):
    """Operation not possible in the current state, e.g. sampling an empty archive."""


class PerturbationUnavailableError(InvalidInputError):
    """The four-job perturbation needs at least four jobs."""


class OracleSizeError(InvalidInputError):
    """Exhaustive enumeration refused because the instance is too large."""


class ParseError(ValueError):
    """Malformed instance or record file; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
