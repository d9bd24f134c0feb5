"""gwkit Utilities"""

from .validation import (
    BUDGET_ENV,
    resolve_budget,
    validate_radius,
)

__all__ = [
    "BUDGET_ENV",
    "resolve_budget",
    "validate_radius",
]
