"""
Algebra Package
Exact rational polynomials, vector fields and map-germs, plus the text parser.
"""

from .polynomial import (
    STANDARD,
    WEIGHTED,
    GermMap,
    NonGermError,
    Poly,
    PolyVec,
    UnassignedVariable,
    VariableSpace,
    VariableSpaceMismatch,
    apply_derivation,
    degree,
    order,
    poly_add,
    poly_mul,
    substitute,
    truncate,
)
from .parser import PolySyntaxError, UnknownVariableError, parse_germ_text, parse_poly, parse_polyvec

__all__ = [
    'STANDARD',
    'WEIGHTED',
    'GermMap',
    'NonGermError',
    'Poly',
    'PolyVec',
    'PolySyntaxError',
    'UnassignedVariable',
    'UnknownVariableError',
    'VariableSpace',
    'VariableSpaceMismatch',
    'apply_derivation',
    'degree',
    'order',
    'parse_germ_text',
    'parse_poly',
    'parse_polyvec',
    'poly_add',
    'poly_mul',
    'substitute',
    'truncate',
]
