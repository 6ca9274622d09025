# src/equivalence/codimension.py
"""
VK_e-codimension, determinacy degrees and complete transversals.

Finiteness is certified one degree at a time: once the degree-d monomial
vectors lie in the tangent space modulo 𝔪^{d+1}θ(h), Nakayama's lemma gives
𝔪^d θ(h) ⊆ T and the quotient is read off the degree-d jet space. A germ
that never stabilises up to max_degree is reported as not certified finite,
and so is one whose tangent module drops rank on a coordinate axis.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

from ..algebra.polynomial import GermMap, Poly, PolyVec
from ..config import settings
from ..crosscap.context import FieldContext
from ..jets.jet_space import GradedSpan, homogeneous_block, homogeneous_complement, quotient_dim
from .tangent import EXTENDED, ONE_JET_IDENTITY, TangentSpec, tangent_generators, tangent_space

logger = logging.getLogger(__name__)

VIA_K1 = "via-K1"
VIA_KE = "via-Ke"
DETERMINACY_MODES = (VIA_K1, VIA_KE)


class DeterminacyModeError(ValueError):
    """The requested determinacy criterion does not apply to this field list."""


@dataclass
class CodimReport:
    codim: Optional[int]
    normal_basis: List[PolyVec] = field(default_factory=list)
    stabilization_degree: Optional[int] = None
    determinacy: Optional[int] = None
    max_degree: int = 0

    @property
    def finite(self) -> bool:
        return self.codim is not None

    def as_dict(self) -> dict:
        return {
            'codimension': self.codim if self.finite else "infinite",
            'normal_basis': [v.to_text() for v in self.normal_basis],
            'stabilization_degree': self.stabilization_degree,
            'determinacy': self.determinacy,
        }


def _resolve_max_degree(max_degree: Optional[int]) -> int:
    max_degree = settings.max_degree if max_degree is None else max_degree
    if max_degree < 2:
        raise ValueError(f"max_degree must be at least 2, got {max_degree}")
    return max_degree


def _on_axis(poly: Poly, index: int) -> Poly:
    """Restriction to the coordinate axis of one variable."""
    return Poly(poly.space, {e: c for e, c in poly.terms.items()
                             if all(a == 0 for i, a in enumerate(e) if i != index)})


def _polynomial_rank(rows: List[List[Poly]]) -> int:
    """Rank over the fraction field, by fraction-free elimination."""
    rows = [row for row in rows if any(row)]
    rank = 0
    for column in range(len(rows[0]) if rows else 0):
        position = next((i for i, row in enumerate(rows) if row[column]), None)
        if position is None:
            continue
        pivot = rows.pop(position)
        rank += 1
        rows = [[pivot[column] * x - row[column] * p for x, p in zip(row, pivot)] for row in rows]
        rows = [row for row in rows if any(row)]
    return rank


def degenerate_axis(ctx: FieldContext, h: GermMap) -> Optional[str]:
    """
    A coordinate axis on which the extended tangent module restricts to rank < q.

    Restriction to an axis is a ring map, so 𝔪^d θ(h) ⊆ T would restrict to
    t^d times the full free module; a rank drop therefore certifies that the
    codimension is infinite.
    """
    generators = tangent_generators(ctx, h, EXTENDED)
    for index, name in enumerate(h.source.names):
        rows = [[_on_axis(c, index) for c in g.components] for g in generators]
        if _polynomial_rank(rows) < h.q:
            return name
    return None


def _first_stable_degree(ctx: FieldContext, h: GermMap, variant: str, offset: int, max_degree: int):
    """Least l <= max_degree with M_{l+offset} inside the tangent space at truncation l+offset."""
    axis = degenerate_axis(ctx, h)
    if axis is not None:
        logger.info("Tangent module of %s drops rank along the %s axis", h, axis)
        return None, None

    span = GradedSpan(tangent_generators(ctx, h, variant), h.source, h.q, max_degree + offset)
    for l in range(1, max_degree + 1):
        if span.covers_degree(l + offset):
            logger.info("%s tangent space of %s stabilises at degree %d", variant, h, l + offset)
            return l, span.truncated(l + offset)
        logger.debug("degree %d: %s tangent space not stable", l + offset, variant)
    return None, None


def codimension(ctx: FieldContext, h: GermMap, max_degree: Optional[int] = None) -> CodimReport:
    max_degree = _resolve_max_degree(max_degree)
    TangentSpec(ctx, h, EXTENDED, 1)  # validates h against ctx

    degree, tangent = _first_stable_degree(ctx, h, EXTENDED, 0, max_degree)
    if degree is None:
        logger.info("Codimension of %s not certified finite up to degree %d", h, max_degree)
        return CodimReport(None, [], None, None, max_degree)

    codim, basis = quotient_dim(tangent)
    determinacy = degree if ctx.fields_vanish_at_origin() else None
    return CodimReport(codim, basis, degree, determinacy, max_degree)


def determinacy_bound(ctx: FieldContext, h: GermMap, mode: str = VIA_KE,
                      max_degree: Optional[int] = None) -> Optional[int]:
    """
    Least l with 𝔪^{l+1}θ ⊆ T_1 + 𝔪^{l+2}θ (via-K1) or 𝔪^l θ ⊆ T_e + 𝔪^{l+1}θ (via-Ke);
    None when no l up to max_degree qualifies.
    """
    max_degree = _resolve_max_degree(max_degree)
    TangentSpec(ctx, h, EXTENDED, 1)  # validates h against ctx

    if mode == VIA_KE:
        if not ctx.fields_vanish_at_origin():
            raise DeterminacyModeError("via-Ke needs every field of Θ_V to vanish at the origin")
        degree, _ = _first_stable_degree(ctx, h, EXTENDED, 0, max_degree)
        return degree
    if mode == VIA_K1:
        degree, _ = _first_stable_degree(ctx, h, ONE_JET_IDENTITY, 1, max_degree)
        return degree
    raise DeterminacyModeError(f"Unknown determinacy mode '{mode}' (use {', '.join(DETERMINACY_MODES)})")


def complete_transversal(ctx: FieldContext, jet: GermMap, d: int) -> List[PolyVec]:
    """Homogeneous degree-d vectors completing T_1(jet) modulo 𝔪^{d+1}θ."""
    if d < 2:
        raise ValueError(f"Transversal degree must be >= 2, got {d}")
    jet_degree = jet.degree()
    if jet_degree is not None and jet_degree > d - 1:
        raise ValueError(f"Jet has degree {jet_degree}, expected at most {d - 1}")

    spec = TangentSpec(ctx, jet, ONE_JET_IDENTITY, d)
    transversal = homogeneous_complement(tangent_space(spec), homogeneous_block(spec.ambient, d))
    logger.info("Complete transversal of %s at degree %d: %s", jet, d, [str(v) for v in transversal])
    return transversal
