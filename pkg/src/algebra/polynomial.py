# src/algebra/polynomial.py
"""
Exact sparse multivariate polynomials over the rationals.

A Poly is a map from exponent tuples to nonzero Fractions over a fixed
VariableSpace. PolyVec is a tuple of Polys (an element of E_p^q), GermMap a
polynomial map-germ sending 0 to 0. Every value is immutable once built.
"""

from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union
import re

import sympy as sp

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]

STANDARD = "standard"
WEIGHTED = "weighted"

_NAME_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class VariableSpaceMismatch(ValueError):
    """Two operands live over different variable spaces."""


class UnassignedVariable(ValueError):
    """A substitution has no image for a variable that occurs."""


class NonGermError(ValueError):
    """A map component does not vanish at the origin."""


def exponents_of_degree(degree: int, nvars: int) -> Iterator[Exponent]:
    """Yield the exponent tuples of total degree `degree`, first variable dominant."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in exponents_of_degree(degree - first, nvars - 1):
            yield (first,) + rest


def graded_key(exponent: Exponent) -> Tuple:
    """Ascending degree, then lexicographic with the first variable largest."""
    return (sum(exponent), tuple(-e for e in exponent))


def _add_into(target: Dict[Exponent, Fraction], source: Mapping[Exponent, Fraction], scale: Scalar = 1):
    for exponent, coeff in source.items():
        value = target.get(exponent, 0) + coeff * scale
        if value:
            target[exponent] = value
        else:
            target.pop(exponent, None)


class VariableSpace:
    """Ordered variable names with one positive quasihomogeneous weight each."""

    __slots__ = ("names", "weights", "_index")

    def __init__(self, names: Sequence[str], weights: Optional[Sequence[int]] = None):
        names = tuple(names)
        if not names:
            raise ValueError("A variable space needs at least one variable")
        for name in names:
            if not isinstance(name, str) or not _NAME_PATTERN.match(name):
                raise ValueError(f"Invalid variable name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"Variable names must be distinct: {names}")

        weights = tuple(int(w) for w in weights) if weights is not None else (1,) * len(names)
        if len(weights) != len(names):
            raise ValueError(f"Expected {len(names)} weights, got {len(weights)}")
        if any(w < 1 for w in weights):
            raise ValueError(f"Weights must be positive integers: {weights}")

        self.names = names
        self.weights = weights
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, VariableSpace):
            return NotImplemented
        return self.names == other.names and self.weights == other.weights

    def __hash__(self) -> int:
        return hash((self.names, self.weights))

    def __repr__(self) -> str:
        return f"VariableSpace({list(self.names)}, weights={list(self.weights)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"Unknown variable '{name}' (space has {', '.join(self.names)})")

    def weighted_degree(self, exponent: Exponent) -> int:
        return sum(w * e for w, e in zip(self.weights, exponent))

    def unit_exponent(self, name: str, power: int = 1) -> Exponent:
        i = self.index(name)
        return tuple(power if j == i else 0 for j in range(len(self.names)))

    def variable(self, name: str) -> "Poly":
        return Poly._raw(self, {self.unit_exponent(name): Fraction(1)})

    def variables(self) -> List["Poly"]:
        return [self.variable(name) for name in self.names]

    def monomials(self, max_degree: int) -> List[Exponent]:
        """All exponents with standard degree <= max_degree, in graded order."""
        result: List[Exponent] = []
        for d in range(max_degree + 1):
            result.extend(exponents_of_degree(d, len(self.names)))
        return result

    def restricted(self, names: Sequence[str]) -> "VariableSpace":
        """Sub-space keeping the given names (in this space's order) and their weights."""
        keep = set(names)
        kept = [(n, w) for n, w in zip(self.names, self.weights) if n in keep]
        return VariableSpace([n for n, _ in kept], [w for _, w in kept])


class Poly:
    """Exact polynomial over a VariableSpace, canonical by construction."""

    __slots__ = ("space", "_terms")

    def __init__(self, space: VariableSpace, terms: Optional[Mapping[Exponent, Scalar]] = None):
        cleaned: Dict[Exponent, Fraction] = {}
        nvars = len(space)
        for exponent, coeff in (terms or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != nvars or any(e < 0 for e in exponent):
                raise ValueError(f"Exponent {exponent} does not fit {nvars} variables")
            value = Fraction(coeff)
            if value:
                cleaned[exponent] = cleaned.get(exponent, 0) + value
        self.space = space
        self._terms = {e: c for e, c in cleaned.items() if c}

    @classmethod
    def _raw(cls, space: VariableSpace, terms: Dict[Exponent, Fraction]) -> "Poly":
        poly = cls.__new__(cls)
        poly.space = space
        poly._terms = terms
        return poly

    @classmethod
    def zero(cls, space: VariableSpace) -> "Poly":
        return cls._raw(space, {})

    @classmethod
    def constant(cls, space: VariableSpace, value: Scalar) -> "Poly":
        value = Fraction(value)
        if not value:
            return cls.zero(space)
        return cls._raw(space, {(0,) * len(space): value})

    @classmethod
    def one(cls, space: VariableSpace) -> "Poly":
        return cls.constant(space, 1)

    @classmethod
    def monomial(cls, space: VariableSpace, exponent: Exponent, coeff: Scalar = 1) -> "Poly":
        return cls(space, {tuple(exponent): coeff})

    @classmethod
    def from_sympy(cls, expr, space: VariableSpace) -> "Poly":
        symbols = sp.symbols(list(space.names))
        poly = sp.Poly(sp.expand(expr), *symbols)
        terms = {}
        for exponent, coeff in poly.terms():
            rational = sp.Rational(coeff)
            terms[tuple(exponent)] = Fraction(int(rational.p), int(rational.q))
        return cls(space, terms)

    # ------------------------------------------------------------------ access

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def sorted_terms(self) -> List[Tuple[Exponent, Fraction]]:
        return sorted(self._terms.items(), key=lambda item: graded_key(item[0]))

    def coefficient(self, exponent: Exponent) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * len(self.space))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def variables_used(self) -> List[str]:
        used = set()
        for exponent in self._terms:
            used.update(i for i, e in enumerate(exponent) if e)
        return [self.space.names[i] for i in sorted(used)]

    # -------------------------------------------------------------- arithmetic

    def _coerce(self, other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            if other.space != self.space:
                raise VariableSpaceMismatch(
                    f"Cannot combine polynomials over {self.space.names} and {other.space.names}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.space, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        _add_into(terms, other._terms)
        return Poly._raw(self.space, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.space, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        _add_into(terms, other._terms, -1)
        return Poly._raw(self.space, terms)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly.zero(self.space)
            return Poly._raw(self.space, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exponent = tuple(a + b for a, b in zip(e1, e2))
                value = terms.get(exponent, 0) + c1 * c2
                if value:
                    terms[exponent] = value
                else:
                    terms.pop(exponent, None)
        return Poly._raw(self.space, terms)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "Poly":
        if not isinstance(power, int) or power < 0:
            raise ValueError(f"Only non-negative integer powers are supported, got {power!r}")
        result = Poly.one(self.space)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and other:
            return self * (1 / Fraction(other))
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.space == other.space and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly.constant(self.space, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.space, frozenset(self._terms.items())))

    # ----------------------------------------------------------------- degrees

    def _term_degree(self, exponent: Exponent, mode: str) -> int:
        if mode == STANDARD:
            return sum(exponent)
        if mode == WEIGHTED:
            return self.space.weighted_degree(exponent)
        raise ValueError(f"Unknown degree mode '{mode}' (use '{STANDARD}' or '{WEIGHTED}')")

    def degree(self, mode: str = STANDARD) -> Optional[int]:
        """Maximum degree over terms, None for the zero polynomial."""
        if not self._terms:
            return None
        return max(self._term_degree(e, mode) for e in self._terms)

    def order(self, mode: str = STANDARD) -> Optional[int]:
        """Minimum degree over terms, None for the zero polynomial."""
        if not self._terms:
            return None
        return min(self._term_degree(e, mode) for e in self._terms)

    def truncate(self, degree: int) -> "Poly":
        if degree < 0:
            raise ValueError(f"Truncation degree must be >= 0, got {degree}")
        return Poly._raw(self.space, {e: c for e, c in self._terms.items() if sum(e) <= degree})

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly._raw(self.space, {e: c for e, c in self._terms.items() if sum(e) == degree})

    def linear_part(self) -> "Poly":
        return self.homogeneous_part(1)

    def is_quasihomogeneous(self) -> bool:
        return len({self.space.weighted_degree(e) for e in self._terms}) <= 1

    # ------------------------------------------------------------- operations

    def derivative(self, var: Union[str, int]) -> "Poly":
        i = self.space.index(var) if isinstance(var, str) else var
        terms = {}
        for exponent, coeff in self._terms.items():
            if exponent[i]:
                lowered = exponent[:i] + (exponent[i] - 1,) + exponent[i + 1:]
                terms[lowered] = coeff * exponent[i]
        return Poly._raw(self.space, terms)

    def substitute(self, assignment: Mapping[str, Union["Poly", Scalar]],
                   space: Optional[VariableSpace] = None) -> "Poly":
        """Exact composition: replace every occurring variable by its image."""
        images = [v for v in assignment.values() if isinstance(v, Poly)]
        if space is None:
            space = images[0].space if images else self.space
        for image in images:
            if image.space != space:
                raise VariableSpaceMismatch(
                    f"Substitution images must share one space, got {image.space.names} and {space.names}"
                )

        powers: Dict[int, List[Poly]] = {}
        for name in self.variables_used():
            if name not in assignment:
                raise UnassignedVariable(f"No image given for variable '{name}'")
            image = assignment[name]
            if not isinstance(image, Poly):
                image = Poly.constant(space, image)
            powers[self.space.index(name)] = [Poly.one(space), image]

        result: Dict[Exponent, Fraction] = {}
        for exponent, coeff in self._terms.items():
            term = Poly.constant(space, coeff)
            for i, power in enumerate(exponent):
                if power:
                    table = powers[i]
                    while len(table) <= power:
                        table.append(table[-1] * table[1])
                    term = term * table[power]
            _add_into(result, term._terms)
        return Poly._raw(space, result)

    def to_space(self, space: VariableSpace) -> "Poly":
        """Re-express over another space that contains every occurring variable."""
        mapping = [space.index(name) if name in space else None for name in self.space.names]
        terms = {}
        for exponent, coeff in self._terms.items():
            moved = [0] * len(space)
            for i, power in enumerate(exponent):
                if power:
                    if mapping[i] is None:
                        raise UnassignedVariable(
                            f"Variable '{self.space.names[i]}' does not exist in {space.names}"
                        )
                    moved[mapping[i]] = power
            terms[tuple(moved)] = coeff
        return Poly._raw(space, terms)

    def divmod_in(self, var: str, divisor: "Poly") -> Tuple["Poly", "Poly"]:
        """Division in `var` by a divisor whose leading coefficient in `var` is a constant."""
        i = self.space.index(var)
        divisor = self._coerce(divisor)
        if divisor is None or divisor.is_zero():
            raise ZeroDivisionError("Division by the zero polynomial")
        top = max(e[i] for e in divisor._terms)
        lead_exponent = self.space.unit_exponent(var, top)
        leading = [e for e in divisor._terms if e[i] == top]
        if leading != [lead_exponent]:
            raise ValueError(f"Divisor {divisor} must have a constant leading coefficient in {var}")
        lead = divisor._terms[lead_exponent]

        quotient: Dict[Exponent, Fraction] = {}
        remainder = dict(self._terms)
        while True:
            candidates = [e for e in remainder if e[i] >= top]
            if not candidates:
                break
            exponent = max(candidates, key=lambda e: (e[i], e))
            factor = remainder[exponent] / lead
            shift = exponent[:i] + (exponent[i] - top,) + exponent[i + 1:]
            _add_into(quotient, {shift: factor})
            for d_exponent, d_coeff in divisor._terms.items():
                target = tuple(a + b for a, b in zip(shift, d_exponent))
                value = remainder.get(target, 0) - factor * d_coeff
                if value:
                    remainder[target] = value
                else:
                    remainder.pop(target, None)
        return Poly._raw(self.space, quotient), Poly._raw(self.space, remainder)

    # --------------------------------------------------------------- rendering

    def _term_text(self, exponent: Exponent, coeff: Fraction) -> str:
        factors = []
        for name, power in zip(self.space.names, exponent):
            if power == 1:
                factors.append(name)
            elif power > 1:
                factors.append(f"{name}^{power}")
        if not factors:
            return str(coeff)
        monomial = "*".join(factors)
        if coeff == 1:
            return monomial
        if coeff == -1:
            return f"-{monomial}"
        return f"{coeff}*{monomial}"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        text = ""
        for exponent, coeff in self.sorted_terms():
            piece = self._term_text(exponent, coeff)
            if not text:
                text = piece
            elif piece.startswith("-"):
                text += " - " + piece[1:]
            else:
                text += " + " + piece
        return text

    def __repr__(self) -> str:
        return f"Poly({self})"

    def to_sympy(self):
        symbols = sp.symbols(list(self.space.names))
        expr = sp.Integer(0)
        for exponent, coeff in self._terms.items():
            term = sp.Rational(coeff.numerator, coeff.denominator)
            for symbol, power in zip(symbols, exponent):
                term *= symbol ** power
            expr += term
        return expr


class PolyVec:
    """A q-tuple of Polys over one space: an element of E_p^q or a vector field."""

    __slots__ = ("space", "components")

    def __init__(self, components: Sequence[Union[Poly, Scalar]], space: Optional[VariableSpace] = None):
        components = tuple(components)
        if space is None:
            polys = [c for c in components if isinstance(c, Poly)]
            if not polys:
                raise ValueError("PolyVec without polynomial components needs an explicit space")
            space = polys[0].space
        converted = []
        for component in components:
            if isinstance(component, (int, Fraction)):
                component = Poly.constant(space, component)
            elif not isinstance(component, Poly):
                raise TypeError(f"PolyVec components must be Poly, got {type(component).__name__}")
            elif component.space != space:
                raise VariableSpaceMismatch(
                    f"Component over {component.space.names} does not match {space.names}"
                )
            converted.append(component)
        self.space = space
        self.components = tuple(converted)

    @classmethod
    def zero(cls, space: VariableSpace, q: int) -> "PolyVec":
        return cls([Poly.zero(space)] * q, space=space)

    @classmethod
    def unit(cls, space: VariableSpace, q: int, i: int) -> "PolyVec":
        """Unit vector e_i (zero-based i) with constant entry 1."""
        return cls([Poly.one(space) if j == i else Poly.zero(space) for j in range(q)], space=space)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, index):
        return self.components[index]

    def _check(self, other: "PolyVec"):
        if not isinstance(other, PolyVec):
            raise TypeError(f"Expected PolyVec, got {type(other).__name__}")
        if other.space != self.space:
            raise VariableSpaceMismatch(f"PolyVec over {other.space.names} does not match {self.space.names}")
        if len(other) != len(self):
            raise ValueError(f"PolyVec lengths differ: {len(self)} vs {len(other)}")

    def __add__(self, other: "PolyVec") -> "PolyVec":
        self._check(other)
        return PolyVec([a + b for a, b in zip(self.components, other.components)], space=self.space)

    def __sub__(self, other: "PolyVec") -> "PolyVec":
        self._check(other)
        return PolyVec([a - b for a, b in zip(self.components, other.components)], space=self.space)

    def __neg__(self) -> "PolyVec":
        return PolyVec([-a for a in self.components], space=self.space)

    def __mul__(self, factor) -> "PolyVec":
        if isinstance(factor, Poly) and factor.space != self.space:
            raise VariableSpaceMismatch("Scalar polynomial lives over a different space")
        if not isinstance(factor, (Poly, int, Fraction)):
            return NotImplemented
        return PolyVec([a * factor for a in self.components], space=self.space)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVec):
            return NotImplemented
        return self.space == other.space and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.space, self.components))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def truncate(self, degree: int) -> "PolyVec":
        return PolyVec([c.truncate(degree) for c in self.components], space=self.space)

    def homogeneous_part(self, degree: int) -> "PolyVec":
        return PolyVec([c.homogeneous_part(degree) for c in self.components], space=self.space)

    def linear_part(self) -> "PolyVec":
        return self.homogeneous_part(1)

    def degree(self, mode: str = STANDARD) -> Optional[int]:
        degrees = [c.degree(mode) for c in self.components if c]
        return max(degrees) if degrees else None

    def order(self, mode: str = STANDARD) -> Optional[int]:
        orders = [c.order(mode) for c in self.components if c]
        return min(orders) if orders else None

    def substitute(self, assignment: Mapping[str, Union[Poly, Scalar]],
                   space: Optional[VariableSpace] = None) -> "PolyVec":
        images = [c.substitute(assignment, space) for c in self.components]
        target = space or (images[0].space if images else self.space)
        return PolyVec(images, space=target)

    def to_text(self) -> str:
        if len(self.components) == 1:
            return str(self.components[0])
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"PolyVec{self.to_text() if len(self) != 1 else '(' + self.to_text() + ')'}"


class GermMap:
    """Polynomial map-germ (K^p, 0) -> (K^q, 0) over a source space."""

    __slots__ = ("source", "components", "target_names")

    def __init__(self, source: VariableSpace, components: Sequence[Union[Poly, Scalar]],
                 target_names: Optional[Sequence[str]] = None):
        vector = PolyVec(components, space=source)
        for position, component in enumerate(vector.components, start=1):
            constant = component.constant_term()
            if constant:
                raise NonGermError(f"Component {position} has nonzero constant term {constant}")
        if target_names is not None:
            target_names = tuple(target_names)
            if len(target_names) != len(vector):
                raise ValueError(f"Expected {len(vector)} target names, got {len(target_names)}")
        self.source = source
        self.components = vector.components
        self.target_names = target_names

    @property
    def q(self) -> int:
        return len(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def as_polyvec(self) -> PolyVec:
        return PolyVec(self.components, space=self.source)

    def jet(self, degree: int) -> "GermMap":
        return GermMap(self.source, [c.truncate(degree) for c in self.components], self.target_names)

    def degree(self) -> Optional[int]:
        return self.as_polyvec().degree()

    def compose(self, inner: "GermMap") -> "GermMap":
        """self ∘ inner, where inner's components are indexed by self's source variables."""
        if len(inner) != len(self.source):
            raise ValueError(f"Inner map has {len(inner)} components, need {len(self.source)}")
        assignment = dict(zip(self.source.names, inner.components))
        return GermMap(inner.source, [c.substitute(assignment, inner.source) for c in self.components],
                       self.target_names)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GermMap):
            return NotImplemented
        return self.source == other.source and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.source, self.components))

    def __str__(self) -> str:
        return ", ".join(str(c) for c in self.components)

    def __repr__(self) -> str:
        return f"GermMap({self})"


# ---------------------------------------------------------------- operations


def poly_add(a: Poly, b: Poly) -> Poly:
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def degree(p: Poly, mode: str = STANDARD) -> Optional[int]:
    return p.degree(mode)


def order(p: Poly, mode: str = STANDARD) -> Optional[int]:
    return p.order(mode)


def truncate(p: Poly, d: int) -> Poly:
    return p.truncate(d)


def substitute(p: Poly, assignment: Mapping[str, Union[Poly, Scalar]],
               space: Optional[VariableSpace] = None) -> Poly:
    return p.substitute(assignment, space)


def apply_derivation(xi: PolyVec, h: GermMap) -> PolyVec:
    """ξ(h): component j is Σ_a ξ_a ∂h_j/∂x_a."""
    if len(xi) != len(h.source):
        raise ValueError(f"Vector field has {len(xi)} components, source has {len(h.source)} variables")
    if xi.space != h.source:
        raise VariableSpaceMismatch(f"Vector field over {xi.space.names} does not act on {h.source.names}")
    components = []
    for hj in h.components:
        total: Dict[Exponent, Fraction] = {}
        for a, xa in enumerate(xi.components):
            if xa:
                partial = hj.derivative(a)
                if partial:
                    _add_into(total, (xa * partial)._terms)
        components.append(Poly._raw(h.source, total))
    return PolyVec(components, space=h.source)
