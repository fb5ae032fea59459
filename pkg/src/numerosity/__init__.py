"""Exact counting measures with infinitesimal resolution.

The field module provides a computable ordered field with one infinite
unit; the set modules realize counting measures on rational interval
sets and coin-toss events whose ratio to the unit recovers ordinary
length and probability; the builder constructs finite sampling sets
whose trace counts match measure ratios to any prescribed tolerance.
"""

from . import approx, cointoss, lambda_builder, realsets, spacefile, spaces
from .field import (
    ALPHA,
    NEG_INFINITY,
    ONE,
    POS_INFINITY,
    ZERO,
    FieldElement,
    Shadow,
    compare,
    parse_element,
    shadow,
)

__all__ = [
    "ALPHA",
    "NEG_INFINITY",
    "ONE",
    "POS_INFINITY",
    "ZERO",
    "FieldElement",
    "Shadow",
    "approx",
    "cointoss",
    "compare",
    "lambda_builder",
    "parse_element",
    "realsets",
    "shadow",
    "spacefile",
    "spaces",
]
