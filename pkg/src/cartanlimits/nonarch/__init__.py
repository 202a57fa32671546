"""Exact non-Archimedean ordered field used in place of the hyperreals."""

from .field import (
    ONE,
    T,
    ZERO,
    HReal,
    MagnitudeClass,
    PuiseuxPoly,
    add,
    as_hreal,
    clear_denominators,
    compare,
    div,
    galaxy_equiv,
    magnitude_class,
    mul,
    neg,
    same_order,
    shadow,
    sub,
    t_power,
    valuation,
)
from .parse import ParseError, parse_hreal, print_hreal

__all__ = [
    "HReal", "PuiseuxPoly", "MagnitudeClass", "ParseError",
    "ZERO", "ONE", "T", "t_power", "as_hreal", "clear_denominators",
    "add", "sub", "mul", "div", "neg", "compare",
    "valuation", "magnitude_class", "shadow", "same_order", "galaxy_equiv",
    "parse_hreal", "print_hreal",
]
