"""Hyperreal arithmetic, bounded-formula transfer, and ultrafunction levels."""

from ._core import (
    Hyperreal,
    LTheoryError,
    Oracle,
    derivative_coeffs,
    evaluate,
    inner_product,
    j0_value,
    project_coeffs,
    sweep,
    transfer_check,
)

__all__ = [
    "Hyperreal",
    "LTheoryError",
    "Oracle",
    "derivative_coeffs",
    "evaluate",
    "inner_product",
    "j0_value",
    "project_coeffs",
    "sweep",
    "transfer_check",
]
