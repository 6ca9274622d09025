from fractions import Fraction

import pytest

from src.classify import (
    FAIL,
    NORMAL_FORMS,
    PASS,
    SCALING_GRID,
    VerificationReport,
    applicable_forms,
    classify_codim2,
    default_suite,
    family_necessity_counterexample,
    normal_form_germ,
    pullback_normal_form,
    rescaled,
    suite_jobs,
    verify_codim2_form,
    verify_generic_pairs,
    verify_no_codim2_pairs,
    verify_rescaling_invariance,
    verify_scaling_family,
    verify_vector_fields,
    w1_correction,
)
from src.algebra import parse_germ_text, parse_polyvec
from src.config import settings
from src.crosscap import minimal_crosscap
from src.equivalence import EXTENDED, TangentSpec, codimension, tangent_space
from src.jets import contains


def test_report_compare():
    report = VerificationReport.compare("demo", {'a': 1, 'b': 2}, {'a': 1})
    assert report.passed
    assert report.summary_line() == "✅ demo: pass"
    failed = VerificationReport.compare("demo", {'a': 1}, {'a': 2})
    assert failed.status == FAIL
    assert failed.as_dict()['expected'] == {'a': 2}


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_vector_fields(k):
    assert verify_vector_fields(k).status == PASS


@pytest.mark.parametrize("k, l, case", [c for c in SCALING_GRID if c[2] == "U" and c[1] == 2])
def test_scaling_series_u(k, l, case):
    report = verify_scaling_family(k, l, case)
    assert report.passed, report.computed
    assert report.computed['determinacy'] == l


@pytest.mark.slow
@pytest.mark.parametrize("k, l, case", [c for c in SCALING_GRID if c not in {(3, 2, "U"), (4, 2, "U"), (5, 2, "U")}])
def test_scaling_series_rest(k, l, case):
    report = verify_scaling_family(k, l, case)
    assert report.passed, report.computed
    assert report.computed['determinacy'] == l


def test_uv_scaling_module_shifts_w1():
    assert w1_correction(4) == Fraction(1, 4)
    assert w1_correction(5) == 0
    report = verify_scaling_family(4, 3, "UV")
    assert report.passed, report.computed
    assert "W1 + 1/4*U2^2" in report.note
    assert report.computed['transversal'] == ["U2^3"]


def test_scaling_case_rejects_small_k():
    with pytest.raises(ValueError):
        verify_scaling_family(3, 2, "UV")
    with pytest.raises(ValueError):
        verify_scaling_family(3, 2, "X")


def test_applicable_forms():
    assert applicable_forms(2) == ["VW2", "WV2", "pair-VW"]
    assert applicable_forms(3) == ["UV2", "VW", "pair-UVW"]
    assert applicable_forms(4) == ["UV2", "UVU2", "pair-UUVW"]
    assert applicable_forms(5) == ["UV2", "UVU2"]


def test_normal_form_germ_text():
    assert str(normal_form_germ(4, "UVU2")) == "U1 + V3 + U2^2"
    with pytest.raises(ValueError):
        normal_form_germ(2, "UV2")
    with pytest.raises(ValueError):
        normal_form_germ(3, "nope")


@pytest.mark.parametrize("k, name", [(k, name) for name, form in NORMAL_FORMS.items()
                                     for k in range(2, 6) if form.applies(k)])
def test_codim2_normal_forms(k, name):
    report = verify_codim2_form(k, name)
    assert report.passed, report.computed
    assert report.computed['determinacy'] == (2 if NORMAL_FORMS[name].q == 1 else 1)


@pytest.mark.parametrize("k", [3, 4])
def test_generic_pairs(k):
    report = verify_generic_pairs(k)
    assert report.passed, report.computed
    assert report.computed['samples'] == settings.negative_samples


def test_pair_without_u1_in_second_component_is_not_codim2(k4):
    space = k4.target_vars
    h = parse_germ_text("U2, V3 + W1", space)
    one_jet = tangent_space(TangentSpec(k4, h, EXTENDED, 1))
    assert not contains(one_jet, parse_polyvec("0, U1", space))
    report = codimension(k4, h, max_degree=3)
    assert report.codim is None or report.codim > 2


def test_generic_pairs_only_for_k_3_4():
    with pytest.raises(ValueError):
        verify_generic_pairs(5)


@pytest.mark.slow
def test_no_pairs_for_k5():
    report = verify_no_codim2_pairs(5, samples=20)
    assert report.passed, report.computed
    assert report.computed['containment_with_W1e2'] == 20


def test_no_pairs_for_k6():
    report = verify_no_codim2_pairs(6, samples=3)
    assert report.passed
    assert report.computed['min_one_jet_codimension'] >= 3


def test_classify_k2():
    reports = classify_codim2(2)
    assert [r.claim_id for r in reports] == ["codim2/VW2/k=2", "codim2/WV2/k=2", "codim2/pair-VW/k=2"]
    assert all(r.passed for r in reports)


def test_classify_rejects_out_of_range():
    with pytest.raises(ValueError):
        classify_codim2(7)


def test_family_necessity_counterexample():
    report = family_necessity_counterexample()
    assert report.passed, report.computed
    assert report.computed['euler_free_codimension'] == 2
    assert report.computed['euler_free_normal_basis'] == ["(1, 0)", "(0, 1)"]
    assert all(report.computed['displayed_vectors_match'].values())


@pytest.mark.parametrize("k, name", [(3, "UV2"), (4, "UV2"), (5, "UV2"), (3, "VW"), (4, "UVU2"),
                                     (2, "VW2"), (3, "pair-UVW"), (4, "pair-UUVW")])
def test_pullbacks(k, name):
    pulled, report = pullback_normal_form(k, name)
    assert report.passed, report.computed
    assert pulled is not None
    assert len(pulled.source) == 2 * k - 2 - normal_form_germ(k, name).q


@pytest.mark.parametrize("name", ["WV2", "pair-VW"])
def test_pullback_transversality_failures(name):
    pulled, report = pullback_normal_form(2, name)
    assert pulled is None
    assert report.passed
    assert report.computed['transverse'] is False


def test_pullback_raw_display_for_vw():
    _, report = pullback_normal_form(3, "VW")
    assert report.computed['matches_raw_display'] is True
    assert "y^5" in report.note


def test_rescaled_germ():
    ctx = minimal_crosscap(3)
    h = parse_germ_text("U1, V2 + W1", ctx.target_vars)
    swapped = rescaled(h, [[1, 0], [0, 1]], [1, 0])
    assert str(swapped) == "V2 + W1, U1"
    assert codimension(ctx, swapped).codim == 2


@pytest.mark.parametrize("k, name", [(3, "UV2"), (3, "pair-UVW"), (2, "VW2")])
def test_rescaling_invariance(k, name):
    assert verify_rescaling_invariance(k, name, trials=2, seed=7).passed


def test_suite_jobs_cover_every_form():
    jobs = suite_jobs((2, 3))
    kinds = [kind for kind, _ in jobs]
    assert kinds.count('fields') == 2
    assert kinds.count('pullback') == len(applicable_forms(2)) + len(applicable_forms(3))
    assert ('counterexample', ()) in jobs


@pytest.mark.slow
def test_default_suite_order_independent_of_workers():
    serial = default_suite(ks=(2, 3), workers=1, samples=3)
    pooled = default_suite(ks=(2, 3), workers=2, samples=3)
    assert [r.claim_id for r in serial] == [r.claim_id for r in pooled]
    assert [r.status for r in serial] == [r.status for r in pooled]
    assert all(r.passed for r in serial)
