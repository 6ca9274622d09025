# src/crosscap/liftability.py
import logging
from dataclasses import dataclass
from typing import Optional

from ..algebra.polynomial import Poly, PolyVec, VariableSpaceMismatch, apply_derivation
from .context import CrossCapContext

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LiftResult:
    """Outcome of a lift attempt: either an exact lift or the obstruction."""

    lift: Optional[PolyVec]
    failure_degree: Optional[int] = None
    residual: Optional[Poly] = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.lift is not None


def verify_liftable(ctx: CrossCapContext, xi: PolyVec) -> LiftResult:
    """
    Find η on the source with dφ_k(η) = ξ∘φ_k.

    The identity components of φ_k force η_{u_i} and η_{v_i}. η_y is the
    quotient of the W1 equation by ∂φ_{W1}/∂y (leading coefficient k in y);
    a nonzero remainder, or a nonzero residual in the W2 equation, certifies
    that no lift exists.
    """
    if not isinstance(ctx, CrossCapContext):
        raise TypeError("Liftability is only defined over a cross cap context")
    if xi.space != ctx.target_vars:
        raise VariableSpaceMismatch(f"Field over {xi.space.names} is not on {ctx.target_vars.names}")
    if len(xi) != len(ctx.target_vars):
        raise ValueError(f"Field has {len(xi)} components, expected {len(ctx.target_vars)}")

    source = ctx.source_vars
    pulled = list(pulled_back_field(ctx, xi).components)

    n = ctx.u_count + ctx.v_count
    eta_u = pulled[:ctx.u_count]
    eta_v = pulled[ctx.u_count:n]
    w1_target, w2_target = pulled[n], pulled[n + 1]

    y = source.variable("y")
    phi_w1, phi_w2 = ctx.phi.components[n], ctx.phi.components[n + 1]

    # W1 equation: Σ η_{u_i} y^i + η_y ∂φ_{W1}/∂y = ξ_{W1}∘φ
    rest = w1_target
    for i, eta in enumerate(eta_u, start=1):
        rest = rest - eta * y ** i
    eta_y, remainder = rest.divmod_in("y", phi_w1.derivative("y"))
    if remainder:
        logger.debug("W1 equation not divisible, remainder %s", remainder)
        return LiftResult(None, remainder.order(), remainder, "W1 component is not divisible")

    # W2 equation: Σ η_{v_i} y^i + η_y ∂φ_{W2}/∂y = ξ_{W2}∘φ
    residual = eta_y * phi_w2.derivative("y") - w2_target
    for i, eta in enumerate(eta_v, start=1):
        residual = residual + eta * y ** i
    if residual:
        logger.debug("W2 equation fails, residual %s", residual)
        return LiftResult(None, residual.order(), residual, "W2 component has a nonzero residual")

    return LiftResult(PolyVec(eta_u + eta_v + [eta_y], space=source))


def pushforward(ctx: CrossCapContext, eta: PolyVec) -> PolyVec:
    """dφ_k(η): the target field along φ_k induced by a source field."""
    return apply_derivation(eta, ctx.phi)


def pulled_back_field(ctx: CrossCapContext, xi: PolyVec) -> PolyVec:
    """ξ∘φ_k."""
    assignment = dict(zip(ctx.target_vars.names, ctx.phi.components))
    return xi.substitute(assignment, ctx.source_vars)
