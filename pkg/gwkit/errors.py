"""
gwkit Error Classes

Custom exceptions for the different ways a computation can refuse to answer.
"""

from typing import Any, Optional

from pydantic import ValidationError as PydanticValidationError

EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_INCONCLUSIVE = 3


class GwkitError(Exception):
    """Base error class for all gwkit errors"""

    exit_code: int = EXIT_CONFIG

    def __init__(self, message: str, code: str = "internal_error"):
        super().__init__(message)
        self.message = message
        self.code = code

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(code={self.code!r}, message={self.message!r})"

    @classmethod
    def from_pydantic(cls, exc: PydanticValidationError, source: str = "config") -> "ValidationError":
        """Create a ValidationError naming the first offending field of a pydantic failure"""
        errors = exc.errors()
        if not errors:
            return ValidationError(f"{source}: invalid input")

        first = errors[0]
        location = ".".join(str(part) for part in first.get("loc", ())) or "<root>"
        return ValidationError(
            f"{source}: field '{location}': {first.get('msg', 'invalid value')}",
            location=location,
        )


class ValidationError(GwkitError):
    """Thrown when a configuration, table or certificate fails validation"""

    def __init__(
        self,
        message: str,
        code: str = "invalid_spec",
        location: Optional[str] = None,
    ):
        super().__init__(message, code)
        self.location = location


class DomainError(GwkitError):
    """Thrown when operands belong to different contexts or lie outside their domain"""

    def __init__(self, message: str, code: str = "domain_mismatch"):
        super().__init__(message, code)


class UnknownVertexError(DomainError, LookupError):
    """Thrown when a vertex is not part of the graph"""

    def __init__(self, vertex: Any):
        super().__init__(f"unknown vertex: {vertex!r}", "unknown_vertex")
        self.vertex = vertex


class UnsupportedOperationError(GwkitError):
    """Thrown when a finite-only operation is asked of a lazily generated graph"""

    def __init__(self, message: str):
        super().__init__(message, "unsupported_operation")


class PreconditionError(GwkitError):
    """Thrown when an operation's precondition does not hold"""

    def __init__(self, message: str):
        super().__init__(message, "precondition_failed")


class BudgetError(GwkitError):
    """Thrown when a bounded search runs out of budget"""

    exit_code = EXIT_INCONCLUSIVE

    def __init__(self, message: str, budget: Optional[int] = None):
        super().__init__(message, "budget_exceeded")
        self.budget = budget


class InconclusiveError(GwkitError):
    """Thrown when a truncated search can neither confirm nor refute"""

    exit_code = EXIT_INCONCLUSIVE

    def __init__(self, message: str):
        super().__init__(message, "inconclusive")


class PropertyViolationError(GwkitError):
    """Thrown when an exact identity or inequality fails on a concrete instance"""

    exit_code = EXIT_VIOLATION

    def __init__(self, message: str, counterexample: Optional[str] = None):
        super().__init__(message, "property_violation")
        self.counterexample = counterexample
