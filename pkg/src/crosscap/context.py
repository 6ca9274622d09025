# src/crosscap/context.py
"""
Minimal cross caps φ_k and the vector fields tangent to their image.

Target coordinates are U_1..U_{k-2}, V_1..V_{k-1}, W_1, W_2 with weights
wt(U_i) = wt(V_i) = k - i and wt(W_1) = wt(W_2) = k. Source coordinates are
u_1..u_{k-2}, v_1..v_{k-1}, y with wt(u_i) = wt(v_i) = k - i and wt(y) = 1.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

from ..algebra.parser import parse_polyvec
from ..algebra.polynomial import GermMap, Poly, PolyVec, VariableSpace

logger = logging.getLogger(__name__)

EULER = "euler"
FAMILIES = ("F1", "F2", "F3")
CUSTOM = "custom"


class FieldIndexError(ValueError):
    """Family or index outside the range defined for this k."""


@dataclass(frozen=True)
class LiftableField:
    family: str
    j: Optional[int]
    components: PolyVec

    @property
    def label(self) -> str:
        return self.family if self.j is None else f"{self.family}_{self.j}"

    def vanishes_at_origin(self) -> bool:
        return all(c.constant_term() == 0 for c in self.components)

    def weighted_shifts(self) -> set:
        """wdeg(component) - wt(coordinate) over the nonzero monomials of every component."""
        space = self.components.space
        shifts = set()
        for weight, component in zip(space.weights, self.components):
            for exponent in component.terms:
                shifts.add(space.weighted_degree(exponent) - weight)
        return shifts

    def is_quasihomogeneous(self) -> bool:
        return len(self.weighted_shifts()) <= 1

    def __str__(self) -> str:
        return f"{self.label}: {self.components}"


class FieldContext:
    """A target space with an ordered generator list for Θ_V."""

    def __init__(self, target_vars: VariableSpace, theta_V: Sequence[LiftableField], name: str = CUSTOM):
        """Initialize a generic field context."""
        for field in theta_V:
            if field.components.space != target_vars or len(field.components) != len(target_vars):
                raise ValueError(f"Field {field.label} does not live on {target_vars.names}")
        self.target_vars = target_vars
        self.theta_V: Tuple[LiftableField, ...] = tuple(theta_V)
        self.name = name

    @property
    def fields(self) -> List[PolyVec]:
        return [field.components for field in self.theta_V]

    def fields_vanish_at_origin(self) -> bool:
        return all(field.vanishes_at_origin() for field in self.theta_V)

    def restricted(self, exclude: Iterable[str] = ()) -> "FieldContext":
        """Same space without the fields whose family (or label) is excluded."""
        excluded = set(exclude)
        kept = [f for f in self.theta_V if f.family not in excluded and f.label not in excluded]
        name = f"{self.name} without {', '.join(sorted(excluded))}" if excluded else self.name
        return FieldContext(self.target_vars, kept, name)

    def __repr__(self) -> str:
        return f"FieldContext({self.name}, {len(self.theta_V)} fields on {list(self.target_vars.names)})"


class CrossCapContext(FieldContext):
    """φ_k together with its Euler field and the three liftable families."""

    def __init__(self, k: int):
        """Initialize the minimal cross cap of multiplicity k."""
        if not isinstance(k, int) or k < 2:
            raise ValueError(f"Cross cap multiplicity must be an integer >= 2, got {k!r}")
        self.k = k

        u_names = [f"U{i}" for i in range(1, k - 1)]
        v_names = [f"V{i}" for i in range(1, k)]
        target = VariableSpace(u_names + v_names + ["W1", "W2"],
                               [k - i for i in range(1, k - 1)] + [k - i for i in range(1, k)] + [k, k])
        source = VariableSpace([n.lower() for n in u_names + v_names] + ["y"],
                               [k - i for i in range(1, k - 1)] + [k - i for i in range(1, k)] + [1])
        self.source_vars = source
        self.phi = self._build_phi(k, target, source)

        fields = [LiftableField(EULER, None, euler_field(target))]
        for family in (1, 2, 3):
            for j in range(1, k):
                fields.append(LiftableField(FAMILIES[family - 1], j,
                                            PolyVec(_family_components(target, k, family, j), space=target)))
        super().__init__(target, fields, name=f"cross cap k={k}")
        logger.debug("Built cross cap context k=%d with %d fields", k, len(fields))

    @staticmethod
    def _build_phi(k: int, target: VariableSpace, source: VariableSpace) -> GermMap:
        y = source.variable("y")
        identity = [source.variable(n) for n in source.names[:-1]]
        w1 = y ** k
        for i in range(1, k - 1):
            w1 = w1 + source.variable(f"u{i}") * y ** i
        w2 = Poly.zero(source)
        for i in range(1, k):
            w2 = w2 + source.variable(f"v{i}") * y ** i
        return GermMap(source, identity + [w1, w2], target_names=target.names)

    @property
    def u_count(self) -> int:
        return self.k - 2

    @property
    def v_count(self) -> int:
        return self.k - 1

    def field(self, family: str, j: Optional[int] = None) -> LiftableField:
        for field in self.theta_V:
            if field.family == family and field.j == j:
                return field
        raise FieldIndexError(f"No field {family} j={j} for k={self.k}")

    def __repr__(self) -> str:
        return f"CrossCapContext(k={self.k})"


def euler_field(target: VariableSpace) -> PolyVec:
    """ξ_e: every coordinate scaled by its weight."""
    return PolyVec([target.variable(n) * w for n, w in zip(target.names, target.weights)], space=target)


def _family_components(target: VariableSpace, k: int, family: int, j: int) -> List[Poly]:
    zero = Poly.zero(target)
    one = Poly.one(target)
    W1 = target.variable("W1")
    W2 = target.variable("W2")

    # Index conventions: U_{k-1} = V_k = 0, U_k = 1, everything else out of range is 0
    def U(r: int) -> Poly:
        if 1 <= r <= k - 2:
            return target.variable(f"U{r}")
        return one if r == k else zero

    def V(r: int) -> Poly:
        return target.variable(f"V{r}") if 1 <= r <= k - 1 else zero

    def total(terms) -> Poly:
        result = zero
        for term in terms:
            result = result + term
        return result

    A: List[Poly] = []
    B: List[Poly] = []
    if family == 1:
        for i in range(1, k - 1):
            A.append((k - i) * (k - j) * U(i) * U(j))
        for i in range(1, k):
            B.append(k * total(U(i + j - r) * V(r) for r in range(1, i))
                     - k * total(U(r) * V(i + j - r) for r in range(1, i + 1))
                     - (i - 1) * (k - j) * U(j) * V(i)
                     + k * V(i + j) * W1
                     - k * U(i + j) * W2)
        C1 = k * (k - j) * U(j) * W1
        C2 = -k * V(j) * W1 + (k - j) * U(j) * W2
    elif family == 2:
        for i in range(1, k - 1):
            s = k + i - j + 1
            A.append(-k * s * U(s) * W1
                     + k * total((s - 2 * r) * U(r) * U(s - r) for r in range(1, i + 1))
                     - j * (i + 1) * U(i + 1) * U(k - j))
        for i in range(1, k):
            s = k + i - j + 1
            B.append(-k * s * V(s) * W1
                     + k * total((s - r) * U(r) * V(s - r) for r in range(1, i + 1))
                     - k * total(r * U(s - r) * V(r) for r in range(1, i + 1))
                     - j * (i + 1) * U(k - j) * V(i + 1))
        C1 = k * (k - j + 1) * U(k - j + 1) * W1 + j * U(1) * U(k - j)
        C2 = k * (k - j + 1) * V(k - j + 1) * W1 + j * V(1) * U(k - j)
    elif family == 3:
        for i in range(1, k - 1):
            s = k + i - j + 1
            A.append(-k * s * U(s) * W2
                     + k * total((s - r) * U(s - r) * V(r) for r in range(1, i + 1))
                     - k * total(r * U(r) * V(s - r) for r in range(1, i + 1))
                     - k * (i + 1) * U(i + 1) * V(k - j))
        for i in range(1, k):
            s = k + i - j + 1
            B.append(-k * s * V(s) * W2
                     + k * total((s - 2 * r) * V(r) * V(s - r) for r in range(1, i + 1))
                     - k * (i + 1) * V(i + 1) * V(k - j))
        C1 = k * (k - j + 1) * U(k - j + 1) * W2 + k * U(1) * V(k - j)
        C2 = k * (k - j + 1) * V(k - j + 1) * W2 + k * V(1) * V(k - j)
    else:
        raise FieldIndexError(f"Family must be 1, 2 or 3, got {family}")
    return A + B + [C1, C2]


@lru_cache(maxsize=None)
def minimal_crosscap(k: int) -> CrossCapContext:
    return CrossCapContext(k)


def family_field(ctx: CrossCapContext, f: int, j: int) -> LiftableField:
    """ξ^f_j of the context, 1 <= f <= 3 and 1 <= j <= k-1."""
    if f not in (1, 2, 3):
        raise FieldIndexError(f"Family must be 1, 2 or 3, got {f}")
    if not 1 <= j <= ctx.k - 1:
        raise FieldIndexError(f"Index j must lie in 1..{ctx.k - 1} for k={ctx.k}, got {j}")
    return ctx.field(FAMILIES[f - 1], j)


def load_field_context(path, space: VariableSpace) -> FieldContext:
    """
    Read Θ_V generators from a text file: one vector field per line, components
    separated by ';', '#' starts a comment.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Field file not found: {path}")

    fields = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            vector = parse_polyvec(line, space, separator=";")
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from exc
        if len(vector) != len(space):
            raise ValueError(f"{path}:{lineno}: expected {len(space)} components, got {len(vector)}")
        fields.append(LiftableField(CUSTOM, len(fields) + 1, vector))

    logger.info("Loaded %d fields from %s", len(fields), path)
    return FieldContext(space, fields, name=path.name)


def weighted_shift_of(field: LiftableField) -> Optional[int]:
    shifts = field.weighted_shifts()
    return next(iter(shifts)) if len(shifts) == 1 else None
