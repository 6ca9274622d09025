"""
Equivalence Package
Tangent spaces, VK_e-codimension, determinacy bounds and complete transversals.
"""

from .tangent import EXTENDED, ONE_JET_IDENTITY, TangentSpec, ideal_generators, tangent_generators, tangent_space
from .codimension import (
    VIA_K1,
    VIA_KE,
    DETERMINACY_MODES,
    CodimReport,
    DeterminacyModeError,
    codimension,
    complete_transversal,
    degenerate_axis,
    determinacy_bound,
)

__all__ = [
    'EXTENDED',
    'ONE_JET_IDENTITY',
    'VIA_K1',
    'VIA_KE',
    'DETERMINACY_MODES',
    'CodimReport',
    'DeterminacyModeError',
    'TangentSpec',
    'codimension',
    'complete_transversal',
    'degenerate_axis',
    'determinacy_bound',
    'ideal_generators',
    'tangent_generators',
    'tangent_space',
]
