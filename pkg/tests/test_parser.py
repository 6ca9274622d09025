import pytest

from src.algebra import (
    PolySyntaxError,
    UnknownVariableError,
    VariableSpace,
    parse_germ_text,
    parse_poly,
    parse_polyvec,
)


@pytest.mark.parametrize("text, expected", [
    ("2U1V2", "2*U1*V2"),
    ("U1**2", "U1^2"),
    ("U1 − V1", "U1 - V1"),
    ("3·W1", "3*W1"),
    ("1/2 U1", "1/2*U1"),
    ("(U1 + V1)^2", "U1^2 + 2*U1*V1 + V1^2"),
    ("-(V2 - W1)", "-V2 + W1"),
])
def test_equivalent_spellings(k3, text, expected):
    space = k3.target_vars
    assert parse_poly(text, space) == parse_poly(expected, space)


def test_longest_name_wins():
    space = VariableSpace(["U1", "U10", "V"])
    assert parse_poly("U10V", space) == space.variable("U10") * space.variable("V")


def test_unknown_variable_for_k(k3):
    with pytest.raises(UnknownVariableError) as excinfo:
        parse_poly("U5", k3.target_vars)
    assert excinfo.value.name == "U5"
    assert excinfo.value.position == 0


def test_syntax_error_position(k3):
    with pytest.raises(PolySyntaxError) as excinfo:
        parse_poly("U1 +", k3.target_vars)
    assert excinfo.value.position == 4

    with pytest.raises(PolySyntaxError) as excinfo:
        parse_poly("V2²", k3.target_vars)
    assert excinfo.value.position == 2


def test_zero_denominator(k3):
    with pytest.raises(PolySyntaxError):
        parse_poly("1/0 U1", k3.target_vars)


def test_unbalanced_parentheses(k3):
    with pytest.raises(PolySyntaxError):
        parse_poly("(U1 + V1", k3.target_vars)


def test_polyvec_separators(k3):
    space = k3.target_vars
    by_comma = parse_polyvec("V2 + W1, U1", space)
    by_semicolon = parse_polyvec("V2 + W1; U1", space, separator=";")
    assert by_comma == by_semicolon
    assert len(by_comma) == 2


def test_germ_from_text(k3):
    h = parse_germ_text("V2 + W1, U1", k3.target_vars)
    assert h.q == 2
    assert str(h) == "V2 + W1, U1"
