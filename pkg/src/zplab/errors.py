"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: DomainError -> 2, CoverageError -> 3,
NumericalError (and subclasses) -> 4.
"""

from __future__ import annotations


class ZplabError(Exception):
    """Base class for all package errors."""


class DomainError(ZplabError, ValueError):
    """An argument violates a documented precondition."""


class CoverageError(ZplabError):
    """A requested height or range is not covered by the loaded zero table."""

    def __init__(self, message: str, needed: tuple[float, float] | None = None):
        super().__init__(message)
        self.needed = needed


class TableParseError(ZplabError):
    """A zero-table file failed validation."""

    def __init__(self, message: str, line_no: int | None = None):
        super().__init__(message)
        self.line_no = line_no


class NumericalError(ZplabError):
    """A numerical procedure failed to meet its accuracy contract."""


class PoleError(NumericalError):
    """Evaluation requested at (or too near) the pole at s = 1."""


class NearZeroDenominator(NumericalError):
    """Logarithmic derivative requested where |zeta(s)| is below threshold."""

    def __init__(self, message: str, magnitude: float):
        super().__init__(message)
        self.magnitude = magnitude


class RootFindingError(NumericalError):
    """Simultaneous root iteration failed to converge within its budget."""

    def __init__(self, message: str, max_residual: float, iterations: int):
        super().__init__(message)
        self.max_residual = max_residual
        self.iterations = iterations
