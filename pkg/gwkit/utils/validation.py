"""
Input Validation Utilities

Functions for validating numeric knobs and resolving search budgets.
"""

import os
from typing import Optional

from ..errors import ValidationError

BUDGET_ENV = "GWKIT_BUDGET"
DEFAULT_BUDGET = 200_000


def validate_radius(radius: int, name: str = "radius") -> None:
    """
    Validate a ball radius

    Args:
        radius: Radius to validate
        name: Field name used in the error message

    Raises:
        ValidationError: If radius is not a nonnegative integer
    """
    if isinstance(radius, bool) or not isinstance(radius, int):
        raise ValidationError(f"{name} must be an integer", location=name)

    if radius < 0:
        raise ValidationError(f"{name} must be nonnegative, got {radius}", location=name)


def resolve_budget(requested: Optional[int] = None) -> int:
    """
    Resolve a search budget, capped by the GWKIT_BUDGET environment variable

    Args:
        requested: Budget asked for by the caller (default: DEFAULT_BUDGET)

    Returns:
        The effective budget

    Raises:
        ValidationError: If the requested or environment budget is invalid
    """
    budget = DEFAULT_BUDGET if requested is None else requested
    if isinstance(budget, bool) or not isinstance(budget, int) or budget < 1:
        raise ValidationError(f"budget must be a positive integer, got {budget!r}")

    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            cap = int(raw)
        except ValueError:
            raise ValidationError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
        if cap < 1:
            raise ValidationError(f"{BUDGET_ENV} must be positive, got {cap}")
        budget = min(budget, cap)

    return budget
