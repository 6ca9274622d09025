# src/jets/jet_space.py
import logging
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Sequence, Tuple

from ..algebra.polynomial import Exponent, Poly, PolyVec, VariableSpace, VariableSpaceMismatch, exponents_of_degree

logger = logging.getLogger(__name__)

# Sparse coordinate vector: column index -> nonzero Fraction
Vector = Dict[int, Fraction]


class JetBasis:
    """Monomial-vector basis x^a e_i of θ/𝔪^{d+1}θ in graded-lex order, e_i fastest."""

    def __init__(self, space: VariableSpace, q: int, degree: int):
        """Initialize the truncated jet module basis."""
        if q < 1:
            raise ValueError(f"Number of components must be positive, got {q}")
        if degree < 0:
            raise ValueError(f"Truncation degree must be >= 0, got {degree}")
        self.space = space
        self.q = q
        self.degree = degree
        self.monomials: List[Exponent] = space.monomials(degree)
        self._monomial_index = {m: i for i, m in enumerate(self.monomials)}

        # First monomial index of every degree, plus a sentinel
        self._degree_start = [0]
        for d in range(degree + 1):
            self._degree_start.append(self._degree_start[-1] + comb(len(space) + d - 1, d))

    @property
    def size(self) -> int:
        return self.q * len(self.monomials)

    @property
    def basis(self) -> List[Tuple[Exponent, int]]:
        return [(m, i) for m in self.monomials for i in range(self.q)]

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, JetBasis):
            return NotImplemented
        return (self.space, self.q, self.degree) == (other.space, other.q, other.degree)

    def __hash__(self) -> int:
        return hash((self.space, self.q, self.degree))

    def __repr__(self) -> str:
        return f"JetBasis(vars={list(self.space.names)}, q={self.q}, deg={self.degree}, size={self.size})"

    def column(self, monomial: Exponent, component: int) -> int:
        return self._monomial_index[monomial] * self.q + component

    def entry(self, column: int) -> Tuple[Exponent, int]:
        return self.monomials[column // self.q], column % self.q

    def columns_of_degree(self, d: int) -> range:
        if d < 0 or d > self.degree:
            return range(0)
        return range(self._degree_start[d] * self.q, self._degree_start[d + 1] * self.q)

    def element(self, column: int) -> PolyVec:
        """The basis monomial-vector at a column as a PolyVec."""
        return self.to_polyvec({column: Fraction(1)})

    def to_polyvec(self, vector: Vector) -> PolyVec:
        components: List[Dict[Exponent, Fraction]] = [{} for _ in range(self.q)]
        for column, coeff in vector.items():
            monomial, component = self.entry(column)
            components[component][monomial] = coeff
        return PolyVec([Poly(self.space, terms) for terms in components], space=self.space)


def _check_vector(v: PolyVec, ambient: JetBasis):
    if v.space != ambient.space:
        raise VariableSpaceMismatch(f"Vector over {v.space.names} does not live in {ambient}")
    if len(v) != ambient.q:
        raise ValueError(f"Vector has {len(v)} components, ambient expects {ambient.q}")


def vectorize(v: PolyVec, ambient: JetBasis) -> Vector:
    """Coordinates of the truncation of v; terms above the degree are dropped."""
    _check_vector(v, ambient)
    vector: Vector = {}
    for component, poly in enumerate(v.components):
        for monomial, coeff in poly.terms.items():
            if sum(monomial) <= ambient.degree:
                vector[ambient.column(monomial, component)] = coeff
    return vector


def _shifted(terms: Sequence[Dict[Exponent, Fraction]], shift: Exponent, ambient: JetBasis) -> Vector:
    vector: Vector = {}
    for component, component_terms in enumerate(terms):
        for monomial, coeff in component_terms.items():
            moved = tuple(a + b for a, b in zip(monomial, shift))
            if sum(moved) <= ambient.degree:
                vector[ambient.column(moved, component)] = coeff
    return vector


class Subspace:
    """Reduced row echelon form of a subspace of a JetBasis, pivots monic and leftmost."""

    def __init__(self, ambient: JetBasis, vectors: Iterable[Vector] = ()):
        """Initialize from coordinate vectors (reduced on insertion)."""
        self.ambient = ambient
        self._rows: Dict[int, Vector] = {}
        for vector in vectors:
            self._insert(vector)

    # Rows are kept fully reduced: a pivot column is zero in every other row.
    def reduce(self, vector: Vector) -> Vector:
        """Remainder of a coordinate vector after elimination against the rows."""
        remainder = dict(vector)
        for pivot in [c for c in remainder if c in self._rows]:
            factor = remainder.get(pivot)
            if not factor:
                continue
            for column, value in self._rows[pivot].items():
                updated = remainder.get(column, 0) - factor * value
                if updated:
                    remainder[column] = updated
                else:
                    remainder.pop(column, None)
        return remainder

    def _insert(self, vector: Vector) -> bool:
        remainder = self.reduce(vector)
        if not remainder:
            return False
        pivot = min(remainder)
        scale = remainder[pivot]
        row = {column: value / scale for column, value in remainder.items()}
        for other in self._rows.values():
            factor = other.get(pivot)
            if factor:
                for column, value in row.items():
                    updated = other.get(column, 0) - factor * value
                    if updated:
                        other[column] = updated
                    else:
                        other.pop(column, None)
        self._rows[pivot] = row
        return True

    def extended(self, vectors: Iterable[Vector]) -> "Subspace":
        copy = Subspace(self.ambient)
        copy._rows = {pivot: dict(row) for pivot, row in self._rows.items()}
        for vector in vectors:
            copy._insert(vector)
        return copy

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    @property
    def rows(self) -> List[Vector]:
        return [dict(self._rows[p]) for p in self.pivots]

    @property
    def rank(self) -> int:
        return len(self._rows)

    def dense_rows(self) -> List[List[Fraction]]:
        size = self.ambient.size
        dense = []
        for row in self.rows:
            line = [Fraction(0)] * size
            for column, value in row.items():
                line[column] = value
            dense.append(line)
        return dense

    def includes(self, other: "Subspace") -> bool:
        return all(not self.reduce(row) for row in other._rows.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self._rows == other._rows

    def __repr__(self) -> str:
        return f"Subspace(rank={self.rank}, ambient={self.ambient})"


def module_span(generators: Sequence[PolyVec], extra_vectors: Sequence[PolyVec], ambient: JetBasis) -> Subspace:
    """
    Span of all truncated monomial multiples m·g of the module generators
    together with the plain extra vectors.
    """
    subspace = Subspace(ambient)
    for generator in generators:
        _check_vector(generator, ambient)
        low = generator.truncate(ambient.degree).order()
        if low is None:
            continue
        terms = [c.terms for c in generator.components]
        for monomial in ambient.monomials:
            # monomials come in ascending degree
            if sum(monomial) + low > ambient.degree:
                break
            subspace._insert(_shifted(terms, monomial, ambient))
    for vector in extra_vectors:
        subspace._insert(vectorize(vector, ambient))

    logger.debug("module_span: %d generators, %d extras, rank %d of %d",
                 len(generators), len(extra_vectors), subspace.rank, ambient.size)
    return subspace


def contains(S: Subspace, v: PolyVec) -> bool:
    return not S.reduce(vectorize(v, S.ambient))


def quotient_dim(S: Subspace) -> Tuple[int, List[PolyVec]]:
    """Dimension of ambient/S and the monomial-vectors at the non-pivot columns."""
    free = [c for c in range(S.ambient.size) if c not in S._rows]
    return len(free), [S.ambient.element(c) for c in free]


def homogeneous_block(ambient: JetBasis, d: int) -> Subspace:
    """M_d: the span of all degree-d monomial vectors."""
    return Subspace(ambient, ({c: Fraction(1)} for c in ambient.columns_of_degree(d)))


def homogeneous_complement(S: Subspace, M: Subspace) -> List[PolyVec]:
    """Minimal lift of a basis of M/(M ∩ S), taken greedily from M's echelon rows."""
    if S.ambient != M.ambient:
        raise ValueError("Subspaces live in different ambients")
    chosen = S.extended(())
    result = []
    for row in M.rows:
        if chosen._insert(row):
            result.append(S.ambient.to_polyvec(row))
    return result


def span_of(vectors: Sequence[PolyVec], ambient: JetBasis) -> Subspace:
    return module_span([], vectors, ambient)



class GradedSpan:
    """
    Module span grown one degree at a time.

    Multiples m·g are inserted by increasing order and truncated only at the
    cap, so the rows whose pivot has degree <= d always span the module
    modulo 𝔪^{d+1}θ and earlier work is never redone.
    """

    def __init__(self, generators: Sequence[PolyVec], space: VariableSpace, q: int, cap: int):
        """Initialize an empty span over the given generators."""
        self.space = space
        self.q = q
        self.cap = cap
        self.degree = -1
        self._generators: List[Tuple[int, List[Dict[Exponent, Fraction]]]] = []
        spread = 0
        for generator in generators:
            _check_vector(generator, JetBasis(space, q, 0))
            truncated = generator.truncate(cap)
            low = truncated.order()
            if low is None:
                continue
            spread = max(spread, truncated.degree() - low)
            self._generators.append((low, [c.terms for c in truncated.components]))
        self._spread = spread
        self._subspace = Subspace(JetBasis(space, q, 0))

    def grow_to(self, degree: int):
        """Insert every multiple of order <= degree."""
        if degree > self.cap:
            raise ValueError(f"Degree {degree} exceeds the span's cap {self.cap}")
        while self.degree < degree:
            self.degree += 1
            ambient = JetBasis(self.space, self.q, min(self.cap, self.degree + self._spread))
            # column indices are stable across truncations
            self._subspace.ambient = ambient
            for low, terms in self._generators:
                if low > self.degree:
                    continue
                for shift in exponents_of_degree(self.degree - low, len(self.space)):
                    self._subspace._insert(_shifted(terms, shift, ambient))
        logger.debug("graded span at degree %d: rank %d", self.degree, self._subspace.rank)

    def covers_degree(self, d: int) -> bool:
        """M_d inside the span modulo 𝔪^{d+1}θ: every degree-d column is a pivot."""
        self.grow_to(d)
        return all(column in self._subspace._rows for column in self._subspace.ambient.columns_of_degree(d))

    def truncated(self, d: int) -> Subspace:
        """The span modulo 𝔪^{d+1}θ as a Subspace of the degree-d jet space."""
        self.grow_to(d)
        ambient = JetBasis(self.space, self.q, d)
        bound = ambient.size
        result = Subspace(ambient)
        result._rows = {pivot: {c: v for c, v in row.items() if c < bound}
                        for pivot, row in self._subspace._rows.items() if pivot < bound}
        return result
