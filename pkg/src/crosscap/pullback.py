# src/crosscap/pullback.py
import logging
from typing import Dict, List, Optional

from ..algebra.polynomial import GermMap, Poly, PolyVec, VariableSpaceMismatch
from ..jets.jet_space import JetBasis, span_of
from .context import CrossCapContext

logger = logging.getLogger(__name__)


class PullbackError(ValueError):
    """The germ has no admissible elimination structure over φ_k."""


class TransversalityError(PullbackError):
    """φ_k is not transverse to h^{-1}(0)."""


class NoPivotError(PullbackError):
    def __init__(self, component: int, expression: Poly):
        super().__init__(
            f"Component {component} has no source coordinate occurring as a lone "
            f"linear term with coefficient ±1: {expression}"
        )
        self.component = component


def linear_rank(polys: List[Poly]) -> int:
    """Rank of the linear parts of the given polynomials."""
    if not polys:
        return 0
    space = polys[0].space
    return span_of([PolyVec([p.linear_part()], space=space) for p in polys], JetBasis(space, 1, 1)).rank


def _lone_linear_pivot(g: Poly, candidates: List[str]) -> Optional[str]:
    """First candidate occurring in g only as the monomial itself with coefficient ±1."""
    space = g.space
    for name in candidates:
        i = space.index(name)
        occurrences = [(e, c) for e, c in g.terms.items() if e[i]]
        if len(occurrences) != 1:
            continue
        exponent, coeff = occurrences[0]
        if exponent == space.unit_exponent(name) and abs(coeff) == 1:
            return name
    return None


def sharp_pullback(ctx: CrossCapContext, h: GermMap) -> GermMap:
    """
    h^#(φ_k): φ_k restricted to (h∘φ_k)^{-1}(0), mapping into h^{-1}(0).

    Components of h∘φ_k are solved in order for a pivot source coordinate
    (v's before u's) that occurs as a lone ±1 linear term; each solution is
    substituted into everything solved or pending.
    """
    if h.source != ctx.target_vars:
        raise VariableSpaceMismatch(f"Germ over {h.source.names} does not live on {ctx.target_vars.names}")

    source = ctx.source_vars
    assignment = dict(zip(ctx.target_vars.names, ctx.phi.components))
    pending = [c.substitute(assignment, source) for c in h.components]

    rank = linear_rank(pending)
    if rank < h.q:
        raise TransversalityError(
            f"φ_{ctx.k} is not transverse to h^-1(0): linear parts of h∘φ have rank {rank} < {h.q}"
        )

    v_names = [n for n in source.names if n.startswith("v")]
    u_names = [n for n in source.names if n.startswith("u")]
    solutions: Dict[str, Poly] = {}

    for position in range(len(pending)):
        g = pending[position]
        pivot = _lone_linear_pivot(g, [n for n in v_names + u_names if n not in solutions])
        if pivot is None:
            raise NoPivotError(position + 1, g)

        coeff = g.coefficient(source.unit_exponent(pivot))
        solution = -(g - source.variable(pivot) * coeff) * coeff
        logger.debug("Component %d: pivot %s = %s", position + 1, pivot, solution)

        substitution = {n: source.variable(n) for n in source.names}
        substitution[pivot] = solution
        solutions = {n: s.substitute(substitution, source) for n, s in solutions.items()}
        solutions[pivot] = solution
        for later in range(position + 1, len(pending)):
            pending[later] = pending[later].substitute(substitution, source)

    reduced = source.restricted([n for n in source.names if n not in solutions])
    final = {n: reduced.variable(n) for n in reduced.names}
    final.update({n: s.to_space(reduced) for n, s in solutions.items()})

    kept_targets = [
        (name, component)
        for name, component in zip(ctx.target_vars.names, ctx.phi.components)
        if name.lower() not in solutions
    ]
    return GermMap(
        reduced,
        [component.substitute(final, reduced) for _, component in kept_targets],
        target_names=[name for name, _ in kept_targets],
    )
