"""Exception types shared across the package."""

from __future__ import annotations

__all__ = ["ValidationError", "BudgetExceededError", "DecompositionError", "SnapError"]


class ValidationError(ValueError):
    """Raised when an input object violates a structural contract."""


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration would exceed the configured work budget."""

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


class DecompositionError(RuntimeError):
    """Raised when the numerical decomposition cannot certify a result."""


class SnapError(RuntimeError):
    """Raised when a computed value is not near any admissible exact value."""
