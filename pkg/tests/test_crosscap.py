import pytest

from src.algebra import PolyVec, VariableSpace, parse_germ_text, parse_polyvec
from src.crosscap import (
    EULER,
    FieldIndexError,
    NoPivotError,
    TransversalityError,
    family_field,
    linear_rank,
    load_field_context,
    minimal_crosscap,
    pushforward,
    sharp_pullback,
    verify_liftable,
    weighted_shift_of,
)


K3_FIELDS = {
    "euler": "2*U1, 2*V1, V2, 3*W1, 3*W2",
    "F1_1": "4*U1^2, -3*U1*V1 + 3*V2*W1, -5*U1*V2 - 3*W2, 6*U1*W1, -3*V1*W1 + 2*U1*W2",
    "F1_2": "0, -3*U1*V2 - 3*W2, 3*V1, 0, -3*V2*W1",
    "F2_1": "6*U1, -3*V1, -6*V2, 9*W1, 0",
    "F2_2": "-9*W1, 2*U1*V2, -3*V1, 2*U1^2, 6*V2*W1 + 2*U1*V1",
    "F3_1": "9*V1, -6*V2^2, 0, 9*W2 + 3*U1*V2, 3*V1*V2",
    "F3_2": "-9*W2 - 3*U1*V2, -3*V1*V2, 0, 3*U1*V1, 6*V2*W2 + 3*V1^2",
}

K2_FIELDS = {
    "euler": "V1, 2*W1, 2*W2",
    "F1_1": "-2*W2, 0, -2*V1*W1",
    "F2_1": "-2*V1, 4*W1, 0",
    "F3_1": "0, 4*W2, 2*V1^2",
}


def test_crosscap_coordinates(k3):
    assert k3.target_vars.names == ("U1", "V1", "V2", "W1", "W2")
    assert k3.target_vars.weights == (2, 2, 1, 3, 3)
    assert k3.source_vars.names == ("u1", "v1", "v2", "y")
    assert str(k3.phi) == "u1, v1, v2, u1*y + y^3, v1*y + v2*y^2"
    assert len(k3.theta_V) == 7


@pytest.mark.parametrize("k, table", [(3, K3_FIELDS), (2, K2_FIELDS)])
def test_generators_match_tables(k, table):
    ctx = minimal_crosscap(k)
    for field in ctx.theta_V:
        assert field.components == parse_polyvec(table[field.label], ctx.target_vars), field.label


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_every_generator_lifts(k):
    ctx = minimal_crosscap(k)
    assert len(ctx.theta_V) == 3 * (k - 1) + 1
    for field in ctx.theta_V:
        result = verify_liftable(ctx, field.components)
        assert result.ok, f"{field.label}: {result.reason}"
        pulled = field.components.substitute(dict(zip(ctx.target_vars.names, ctx.phi.components)),
                                             ctx.source_vars)
        assert pushforward(ctx, result.lift) == pulled
        assert field.vanishes_at_origin()
        assert field.components.degree() <= 2
        assert weighted_shift_of(field) is not None


def test_euler_lift_scales_y(k3):
    result = verify_liftable(k3, k3.field(EULER).components)
    assert result.lift.components[-1] == k3.source_vars.variable("y")


def test_non_liftable_field_is_rejected(k3):
    # ∂/∂W1 is not tangent to the image
    xi = PolyVec.unit(k3.target_vars, 5, 3)
    result = verify_liftable(k3, xi)
    assert not result.ok
    assert result.reason


def test_family_field_indices(k3):
    assert family_field(k3, 2, 1).label == "F2_1"
    with pytest.raises(FieldIndexError):
        family_field(k3, 4, 1)
    with pytest.raises(FieldIndexError):
        family_field(k3, 1, 3)


def test_restricted_context(k3):
    without = k3.restricted([EULER, "F3"])
    assert [f.label for f in without.theta_V] == ["F1_1", "F1_2", "F2_1", "F2_2"]


def test_invalid_multiplicity():
    with pytest.raises(ValueError):
        minimal_crosscap(1)


def test_load_field_context(tmp_path):
    space = VariableSpace(["x", "y"])
    path = tmp_path / "fields.txt"
    path.write_text("# Euler\nx; y\n\ny; 0  # rotation part\n", encoding="utf-8")
    ctx = load_field_context(path, space)
    assert len(ctx.theta_V) == 2
    assert ctx.fields[1] == parse_polyvec("y; 0", space, separator=";")


def test_load_field_context_reports_line(tmp_path):
    space = VariableSpace(["x", "y"])
    path = tmp_path / "fields.txt"
    path.write_text("x; y\nx; y; x\n", encoding="utf-8")
    with pytest.raises(ValueError, match="fields.txt:2"):
        load_field_context(path, space)


def test_linear_rank(k3):
    space = k3.source_vars
    polys = [parse_polyvec("u1 + y^2, 2*u1 + v1*y, v2", space).components[i] for i in range(3)]
    assert linear_rank(polys) == 2


def test_pullback_uv2_k3(k3):
    pulled = sharp_pullback(k3, parse_germ_text("U1 + V2^2", k3.target_vars))
    assert pulled.source.names == ("v1", "v2", "y")
    assert pulled.target_names == ("V1", "V2", "W1", "W2")
    assert pulled == parse_germ_text("v1, v2, y^3 - v2^2*y, v1*y + v2*y^2", pulled.source)


def test_pullback_vw_k3(k3):
    pulled = sharp_pullback(k3, parse_germ_text("V2 + W1", k3.target_vars))
    assert pulled == parse_germ_text("u1, v1, y^3 + u1*y, v1*y - (y^3 + u1*y)*y^2", pulled.source)


def test_pullback_vw2_k2(k2):
    pulled = sharp_pullback(k2, parse_germ_text("V1 + W1^2", k2.target_vars))
    assert pulled.source.names == ("y",)
    assert pulled == parse_germ_text("y^2, -y^5", pulled.source)


@pytest.mark.parametrize("germ", ["W1 + V1^2", "V1, W1"])
def test_pullback_not_transverse_k2(k2, germ):
    with pytest.raises(TransversalityError):
        sharp_pullback(k2, parse_germ_text(germ, k2.target_vars))


def test_pullback_pair_uuvw_k4(k4):
    pulled = sharp_pullback(k4, parse_germ_text("U2, U1 + V3 + W1", k4.target_vars))
    assert "u2" not in pulled.source.names
    assert "v3" not in pulled.source.names
    assert pulled.q == 5


def test_pullback_without_pivot(k3):
    # v1 only appears with a coefficient of 2
    with pytest.raises(NoPivotError):
        sharp_pullback(k3, parse_germ_text("2*V1 + 2*U1", k3.target_vars))
