from fractions import Fraction

import pytest
import sympy as sp

from conftest import random_poly
from src.algebra import (
    STANDARD,
    WEIGHTED,
    GermMap,
    NonGermError,
    Poly,
    PolyVec,
    UnassignedVariable,
    VariableSpace,
    VariableSpaceMismatch,
    apply_derivation,
    parse_germ_text,
    parse_poly,
)
from src.crosscap import euler_field


def test_variable_space_validation():
    with pytest.raises(ValueError):
        VariableSpace([])
    with pytest.raises(ValueError):
        VariableSpace(["x", "x"])
    with pytest.raises(ValueError):
        VariableSpace(["x"], [0])
    with pytest.raises(ValueError):
        VariableSpace(["1x"])


def test_monomials_graded_order(xyz):
    monomials = xyz.monomials(2)
    assert monomials[0] == (0, 0, 0)
    assert monomials[1:4] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert monomials[4] == (2, 0, 0)
    assert len(monomials) == 10


def test_arithmetic_matches_sympy(xyz, rng):
    for _ in range(25):
        p = random_poly(xyz, rng)
        q = random_poly(xyz, rng)
        assert sp.expand((p * q).to_sympy() - p.to_sympy() * q.to_sympy()) == 0
        assert sp.expand((p + q).to_sympy() - p.to_sympy() - q.to_sympy()) == 0
        assert sp.expand((p ** 3).to_sympy() - p.to_sympy() ** 3) == 0


def test_from_sympy_round_trip(xyz, rng):
    for _ in range(10):
        p = random_poly(xyz, rng)
        assert Poly.from_sympy(p.to_sympy(), xyz) == p


def test_zero_coefficients_are_dropped(xyz):
    x = xyz.variable("x")
    assert (x - x).is_zero()
    assert (x * 0).is_zero()
    assert len(x + x) == 1


def test_canonical_text_ascending_degree(k3):
    p = parse_poly("V2^2 + U1", k3.target_vars)
    assert str(p) == "U1 + V2^2"
    assert str(parse_poly("-3*U1*V1 + 3*V2*W1", k3.target_vars)) == "-3*U1*V1 + 3*V2*W1"
    assert str(Poly.zero(k3.target_vars)) == "0"


def test_degree_order_and_weights(k3):
    space = k3.target_vars
    h = parse_poly("U1 + V2^2", space)
    assert h.degree(STANDARD) == 2
    assert h.order(STANDARD) == 1
    # U1 has weight 2 and V2 weight 1
    assert h.degree(WEIGHTED) == 2
    assert h.is_quasihomogeneous()
    assert not parse_poly("U1 + V2^3", space).is_quasihomogeneous()
    assert Poly.zero(space).degree() is None


def test_truncate_and_homogeneous_parts(xyz):
    p = parse_poly("x + y^2 + x*y*z + z^4", xyz)
    assert p.truncate(2) == parse_poly("x + y^2", xyz)
    assert p.homogeneous_part(3) == parse_poly("x*y*z", xyz)
    assert p.linear_part() == xyz.variable("x")
    with pytest.raises(ValueError):
        p.truncate(-1)


def test_derivative(xyz):
    p = parse_poly("x^3*y + 2*y*z", xyz)
    assert p.derivative("x") == parse_poly("3*x^2*y", xyz)
    assert p.derivative(1) == parse_poly("x^3 + 2*z", xyz)


def test_substitute_is_composition(xyz):
    target = VariableSpace(["s", "t"])
    p = parse_poly("x*y + z^2", xyz)
    image = p.substitute({
        "x": parse_poly("s + t", target),
        "y": parse_poly("s - t", target),
        "z": target.variable("t"),
    }, target)
    assert image == parse_poly("s^2", target)


def test_substitute_requires_every_variable(xyz):
    with pytest.raises(UnassignedVariable):
        parse_poly("x + y", xyz).substitute({"x": xyz.variable("z")})


def test_divmod_in(xyz):
    p = parse_poly("y^3 + x*y + z", xyz)
    divisor = parse_poly("3*y^2 + x", xyz)
    quotient, remainder = p.divmod_in("y", divisor)
    assert quotient * divisor + remainder == p
    assert remainder.degree() is None or all(e[1] < 2 for e in remainder.terms)
    with pytest.raises(ValueError):
        p.divmod_in("y", parse_poly("x*y", xyz))


def test_mixing_spaces_fails(xyz, k2):
    with pytest.raises(VariableSpaceMismatch):
        xyz.variable("x") + k2.target_vars.variable("V1")


def test_scalar_division(xyz):
    assert parse_poly("2*x", xyz) / 4 == Poly(xyz, {(1, 0, 0): Fraction(1, 2)})


def test_germ_rejects_constants(k3):
    with pytest.raises(NonGermError):
        parse_germ_text("U1 + 1, V1", k3.target_vars)


def test_germ_compose(xyz):
    target = VariableSpace(["a", "b"])
    outer = GermMap(target, [parse_poly("a*b", target)])
    inner = GermMap(xyz, [parse_poly("x + y", xyz), xyz.variable("z")])
    assert outer.compose(inner).components[0] == parse_poly("x*z + y*z", xyz)


def test_polyvec_operations(xyz):
    v = PolyVec([xyz.variable("x"), xyz.variable("y")])
    w = v * xyz.variable("z")
    assert w.to_text() == "(x*z, y*z)"
    assert (v - v).is_zero()
    assert PolyVec.unit(xyz, 2, 1).to_text() == "(0, 1)"
    assert w.order() == 2


def test_euler_derivation_on_scaling_germ(k3):
    h = parse_germ_text("U1 + V2^2", k3.target_vars)
    applied = apply_derivation(euler_field(k3.target_vars), h)
    assert applied.components[0] == parse_poly("2*U1 + 2*V2^2", k3.target_vars)


def test_derivation_obeys_leibniz(xyz, rng):
    for _ in range(30):
        f = random_poly(xyz, rng, 2, constant=False)
        g = random_poly(xyz, rng, 2, constant=False)
        xi = PolyVec([random_poly(xyz, rng, 2) for _ in range(3)])
        on_product = apply_derivation(xi, GermMap(xyz, [f * g]))[0]
        on_f = apply_derivation(xi, GermMap(xyz, [f]))[0]
        on_g = apply_derivation(xi, GermMap(xyz, [g]))[0]
        assert on_product == f * on_g + g * on_f


def test_substitute_distributes_over_sum_and_product(xyz, rng):
    target = VariableSpace(["s", "t"])
    for _ in range(30):
        f = random_poly(xyz, rng)
        g = random_poly(xyz, rng)
        assignment = {name: random_poly(target, rng, 2, 3) for name in xyz.names}
        f_image = f.substitute(assignment, target)
        g_image = g.substitute(assignment, target)
        assert (f + g).substitute(assignment, target) == f_image + g_image
        assert (f * g).substitute(assignment, target) == f_image * g_image


def test_truncation_is_multiplicative(xyz, rng):
    for _ in range(30):
        f = random_poly(xyz, rng, 4, 6)
        g = random_poly(xyz, rng, 4, 6)
        d = int(rng.integers(0, 6))
        assert (f * g).truncate(d) == (f.truncate(d) * g.truncate(d)).truncate(d)
