"""
Jets Package
Exact linear algebra on truncated jet modules θ(h)/𝔪^{d+1}θ(h).
"""

from .jet_space import (
    GradedSpan,
    JetBasis,
    Subspace,
    contains,
    homogeneous_block,
    homogeneous_complement,
    module_span,
    quotient_dim,
    span_of,
    vectorize,
)

__all__ = [
    'GradedSpan',
    'JetBasis',
    'Subspace',
    'contains',
    'homogeneous_block',
    'homogeneous_complement',
    'module_span',
    'quotient_dim',
    'span_of',
    'vectorize',
]
