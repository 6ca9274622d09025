# src/equivalence/tangent.py
import logging
from dataclasses import dataclass
from typing import List

from ..algebra.polynomial import GermMap, PolyVec, VariableSpaceMismatch, apply_derivation
from ..crosscap.context import FieldContext
from ..jets.jet_space import JetBasis, Subspace, module_span

logger = logging.getLogger(__name__)

EXTENDED = "extended"
ONE_JET_IDENTITY = "one-jet-identity"
VARIANTS = (EXTENDED, ONE_JET_IDENTITY)


@dataclass(frozen=True)
class TangentSpec:
    ctx: FieldContext
    h: GermMap
    variant: str = EXTENDED
    trunc: int = 2

    def __post_init__(self):
        if self.h.source != self.ctx.target_vars:
            raise VariableSpaceMismatch(
                f"Germ over {self.h.source.names} does not live on {self.ctx.target_vars.names}"
            )
        if self.variant not in VARIANTS:
            raise ValueError(f"Unknown tangent space variant '{self.variant}' (use {', '.join(VARIANTS)})")
        if self.trunc < 1:
            raise ValueError(f"Truncation degree must be >= 1, got {self.trunc}")

    @property
    def ambient(self) -> JetBasis:
        return JetBasis(self.h.source, self.h.q, self.trunc)


def ideal_generators(h: GermMap) -> List[PolyVec]:
    """h_i·e_j for all i, j: generators of h*(𝔪_q)θ(h)."""
    space = h.source
    return [PolyVec.unit(space, h.q, j) * hi for hi in h.components for j in range(h.q)]


def tangent_generators(ctx: FieldContext, h: GermMap, variant: str = EXTENDED) -> List[PolyVec]:
    """
    Module generators of the tangent space.

    extended:          ξ(h) for every field, and h_i·e_j.
    one-jet-identity:  ξ(h) for fields without linear part, x_a·ξ(h) for every
                       field, and x_a·h_i·e_j.
    """
    if variant not in VARIANTS:
        raise ValueError(f"Unknown tangent space variant '{variant}'")
    applied = [(field, apply_derivation(field.components, h)) for field in ctx.theta_V]
    ideal = ideal_generators(h)
    if variant == EXTENDED:
        return [vector for _, vector in applied] + ideal

    variables = h.source.variables()
    generators = [vector for field, vector in applied if field.components.linear_part().is_zero()]
    for _, vector in applied:
        generators.extend(vector * x for x in variables)
    for vector in ideal:
        generators.extend(vector * x for x in variables)
    return generators


def tangent_space(spec: TangentSpec) -> Subspace:
    generators = tangent_generators(spec.ctx, spec.h, spec.variant)
    subspace = module_span(generators, [], spec.ambient)
    logger.debug("Tangent space %s of %s at degree %d has rank %d",
                 spec.variant, spec.h, spec.trunc, subspace.rank)
    return subspace
