"""Exception hierarchy shared by all modules."""
from __future__ import annotations


class TwistError(Exception):
    """Base class for every error raised by this package."""


class DomainError(TwistError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PreconditionError(TwistError, ValueError):
    """A theorem's parameter range is violated."""


class ResourceError(TwistError):
    """The requested computation exceeds the configured memory or work budget."""


class CoverageError(TwistError):
    """A zero table does not reach the requested height."""


class QuadratureError(TwistError, ArithmeticError):
    """Adaptive quadrature failed to reach its tolerance.

    ``diagnostics`` carries panel count, estimated error and the tolerance.
    """

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ZeroTableError(TwistError, ValueError):
    """Base class for zero-table ingestion failures; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ZeroTableParseError(ZeroTableError):
    pass


class MonotonicityError(ZeroTableError):
    pass


class EmptyTableError(ZeroTableError):
    pass
