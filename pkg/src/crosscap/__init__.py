"""
Cross Cap Package

- minimal_crosscap / CrossCapContext: φ_k, weights and the Θ_V generators
- verify_liftable: exact lift of a target field over φ_k
- sharp_pullback: h^#(φ_k) by pivot elimination
"""

from .context import (
    CUSTOM,
    EULER,
    FAMILIES,
    CrossCapContext,
    FieldContext,
    FieldIndexError,
    LiftableField,
    euler_field,
    family_field,
    load_field_context,
    minimal_crosscap,
    weighted_shift_of,
)
from .liftability import LiftResult, pulled_back_field, pushforward, verify_liftable
from .pullback import NoPivotError, PullbackError, TransversalityError, linear_rank, sharp_pullback

__all__ = [
    'CUSTOM',
    'EULER',
    'FAMILIES',
    'CrossCapContext',
    'FieldContext',
    'FieldIndexError',
    'LiftResult',
    'LiftableField',
    'NoPivotError',
    'PullbackError',
    'TransversalityError',
    'euler_field',
    'family_field',
    'linear_rank',
    'load_field_context',
    'minimal_crosscap',
    'pulled_back_field',
    'pushforward',
    'sharp_pullback',
    'verify_liftable',
    'weighted_shift_of',
]
