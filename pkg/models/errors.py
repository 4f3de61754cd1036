"""
Exceptions raised across the solver, generator and experiment layers.
"""

from typing import Optional


class InstanceFormatError(ValueError):
    """Instance text could not be parsed."""

    def __init__(self, message: str, path: Optional[str] = None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class MalformedHeaderError(InstanceFormatError):
    pass


class CountMismatchError(InstanceFormatError):
    pass


class OutOfRangeError(InstanceFormatError):
    pass


class InstanceTooLargeError(ValueError):
    """Instance exceeds the size an exact oracle accepts."""

    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(f"Exact TSP oracle accepts at most {limit} vertices, got {n}")


class GenerationError(RuntimeError):
    """A generator exhausted its retries."""


class SubproblemError(RuntimeError):
    """An oracle failed on one node of the divide-and-conquer tree."""

    def __init__(self, path: str, cause: BaseException):
        self.path = path
        self.cause = cause
        super().__init__(f"Oracle failed on subproblem {path}: {cause}")


class InfeasibleSpecError(ValueError):
    """Experiment spec rejected before any trial runs."""


class StorageError(OSError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class ExperimentNotFoundError(LookupError):
    pass
