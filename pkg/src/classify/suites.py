# src/classify/suites.py
"""
Verification suites for the cross cap classification.

Every suite recomputes its claim from scratch with exact arithmetic and
returns VerificationReport objects; nothing here raises on a failed claim.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.parser import parse_germ_text, parse_poly, parse_polyvec
from ..algebra.polynomial import GermMap, Poly, PolyVec, apply_derivation
from ..config import settings
from ..crosscap.context import EULER, CrossCapContext, family_field, minimal_crosscap
from ..crosscap.liftability import pushforward, verify_liftable
from ..crosscap.pullback import PullbackError, TransversalityError, sharp_pullback
from ..equivalence.codimension import codimension, complete_transversal
from ..equivalence.tangent import EXTENDED, TangentSpec, ideal_generators, tangent_generators, tangent_space
from ..jets.jet_space import JetBasis, contains, homogeneous_block, module_span, quotient_dim, vectorize
from .reports import FAIL, PASS, VerificationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormalForm:
    name: str
    q: int
    applies: Callable[[int], bool]
    template: Callable[[int], str]
    description: str


# Codimension-2 normal forms and the k at which they occur
NORMAL_FORMS: Dict[str, NormalForm] = {
    form.name: form
    for form in (
        NormalForm("UV2", 1, lambda k: k >= 3, lambda k: f"U{k - 2} + V{k - 1}^2", "U_{k-2} + V_{k-1}^2"),
        NormalForm("UVU2", 1, lambda k: k >= 4, lambda k: f"V{k - 1} + U{k - 3} + U{k - 2}^2",
                   "V_{k-1} + U_{k-3} + U_{k-2}^2"),
        NormalForm("VW", 1, lambda k: k == 3, lambda k: "V2 + W1", "V2 + W1"),
        NormalForm("VW2", 1, lambda k: k == 2, lambda k: "V1 + W1^2", "V1 + W1^2"),
        NormalForm("WV2", 1, lambda k: k == 2, lambda k: "W1 + V1^2", "W1 + V1^2"),
        NormalForm("pair-VW", 2, lambda k: k == 2, lambda k: "V1, W1", "(V1, W1)"),
        NormalForm("pair-UVW", 2, lambda k: k == 3, lambda k: "U1, V2 + W1", "(U1, V2 + W1)"),
        NormalForm("pair-UUVW", 2, lambda k: k == 4, lambda k: "U2, U1 + V3 + W1", "(U2, U1 + V3 + W1)"),
    )
}

# φ_k is not transverse to h^{-1}(0) for these
NON_TRANSVERSE = {"WV2", "pair-VW"}

# A-simplified forms of the pullbacks; emitted as notes, never asserted
SIMPLIFIED_PULLBACKS = {
    "UV2": "(u, v, y^k + v_{k-1}^2 y^{k-2} + sum_{i<=k-3} u_i y^i, sum v_i y^i)",
    "UVU2": "(u, v, y^k + sum u_i y^i, (u_{k-3} + u_{k-2}^2) y^{k-1} + sum_{i<=k-2} v_i y^i)",
    "VW": "(u1, v1, y^3 + u1 y, y^5 + v1 y)",
    "VW2": "(y^2, y^3)",
    "pair-UVW": "(v1, y^3, y^5 + v1 y)",
    "pair-UUVW": "(u1, v1, v2, y^4 + u1 y, y^7 + v1 y + v2 y^2 + u1 y^3)",
}

SCALING_CASES = ("U", "UV")
SCALING_GRID = ((3, 2, "U"), (3, 3, "U"), (4, 2, "U"), (4, 3, "U"), (5, 2, "U"),
                (4, 2, "UV"), (4, 3, "UV"), (5, 2, "UV"))

SUPPORTED_K = range(2, 7)


def applicable_forms(k: int) -> List[str]:
    return [name for name, form in NORMAL_FORMS.items() if form.applies(k)]


def normal_form_germ(k: int, name: str) -> GermMap:
    if name not in NORMAL_FORMS:
        raise ValueError(f"Unknown normal form '{name}' (known: {', '.join(NORMAL_FORMS)})")
    form = NORMAL_FORMS[name]
    if not form.applies(k):
        raise ValueError(f"Normal form {name} ({form.description}) does not occur for k={k}")
    return parse_germ_text(form.template(k), minimal_crosscap(k).target_vars)


# ---------------------------------------------------------------- vector fields


def verify_vector_fields(k: int) -> VerificationReport:
    """Every generator lifts over φ_k exactly, is quasihomogeneous, vanishes at 0 and has degree <= 2."""
    ctx = minimal_crosscap(k)
    lifted, quasihomogeneous, low_degree = [], [], []
    for field in ctx.theta_V:
        result = verify_liftable(ctx, field.components)
        exact = result.ok and pushforward(ctx, result.lift) == _pulled(ctx, field.components)
        lifted.append(exact)
        quasihomogeneous.append(field.is_quasihomogeneous())
        low_degree.append(field.vanishes_at_origin() and (field.components.degree() or 0) <= 2)
    count = len(ctx.theta_V)
    return VerificationReport.compare(
        f"fields/k={k}",
        {'fields': count, 'lifted': sum(lifted), 'quasihomogeneous': sum(quasihomogeneous),
         'degree_at_most_2': sum(low_degree)},
        {'fields': 3 * (k - 1) + 1, 'lifted': count, 'quasihomogeneous': count, 'degree_at_most_2': count},
    )


def _pulled(ctx: CrossCapContext, xi: PolyVec) -> PolyVec:
    return xi.substitute(dict(zip(ctx.target_vars.names, ctx.phi.components)), ctx.source_vars)


# --------------------------------------------------------------- scaling series


def w1_correction(k: int) -> Fraction:
    """
    c with W1 + c·U_{k-2}^2 in the tangent module of the UV scaling germs.

    Read off the U_{k-3} entry of ξ^2_{k-2}: its W1 term and its U_{k-2}^2 term
    survive modulo the other generators.
    """
    ctx = minimal_crosscap(k)
    space = ctx.target_vars
    entry = family_field(ctx, 2, k - 2).components[space.index(f"U{k - 3}")]
    return entry.coefficient(space.unit_exponent(f"U{k - 2}", 2)) / entry.coefficient(space.unit_exponent("W1"))


def scaling_family_texts(k: int, l: int, case: str) -> Tuple[str, str, str, List[str]]:
    """(germ, (l-1)-jet, transversal, generators of the displayed tangent ideal)."""
    names = list(minimal_crosscap(k).target_vars.names) if k >= 2 else []
    if case == "U":
        if k < 3 or l < 2:
            raise ValueError(f"Case U needs k >= 3 and l >= 2, got k={k}, l={l}")
        pivot = f"V{k - 1}"
        return (f"U{k - 2} + {pivot}^{l}", f"U{k - 2}", f"{pivot}^{l}",
                [n for n in names if n != pivot] + [f"{pivot}^{l}"])
    if case == "UV":
        if k < 4 or l < 2:
            raise ValueError(f"Case UV needs k >= 4 and l >= 2, got k={k}, l={l}")
        pivot = f"U{k - 2}"
        c = w1_correction(k)
        shifted_w1 = f"W1 {'+' if c > 0 else '-'} {abs(c)}*{pivot}^2" if c else "W1"
        ideal = [shifted_w1 if n == "W1" else n for n in names if n != pivot]
        return (f"V{k - 1} + U{k - 3} + {pivot}^{l}", f"V{k - 1} + U{k - 3}", f"{pivot}^{l}",
                ideal + [f"{pivot}^{l}"])
    raise ValueError(f"Unknown scaling case '{case}' (use {', '.join(SCALING_CASES)})")


def verify_scaling_family(k: int, l: int, case: str, max_degree: Optional[int] = None) -> VerificationReport:
    germ_text, jet_text, transversal_text, ideal = scaling_family_texts(k, l, case)
    ctx = minimal_crosscap(k)
    space = ctx.target_vars
    h = parse_germ_text(germ_text, space)

    report = codimension(ctx, h, max_degree)
    spec = TangentSpec(ctx, h, EXTENDED, l + 1)
    displayed = module_span([PolyVec([parse_poly(g, space)]) for g in ideal], [], spec.ambient)
    transversal = complete_transversal(ctx, parse_germ_text(jet_text, space), l)

    computed = {
        'germ': str(h),
        'codimension': report.codim,
        'normal_basis': [v.to_text() for v in report.normal_basis],
        'determinacy': report.determinacy,
        'tangent_space_matches': tangent_space(spec) == displayed,
        'transversal': [v.to_text() for v in transversal],
    }
    expected = {
        'codimension': l,
        'determinacy': l,
        'tangent_space_matches': True,
        'transversal': [str(parse_poly(transversal_text, space))],
    }
    return VerificationReport.compare(f"scaling/{case}/k={k}/l={l}", computed, expected,
                                      note=f"tangent ideal <{', '.join(ideal)}>")


# ------------------------------------------------------ codimension-2 germs


def verify_codim2_form(k: int, name: str, max_degree: Optional[int] = None) -> VerificationReport:
    ctx = minimal_crosscap(k)
    h = normal_form_germ(k, name)
    report = codimension(ctx, h, max_degree)

    units_outside = None
    if report.finite:
        tangent = tangent_space(TangentSpec(ctx, h, EXTENDED, report.stabilization_degree))
        units_outside = all(not contains(tangent, PolyVec.unit(h.source, h.q, i)) for i in range(h.q))

    computed = {
        'germ': str(h),
        'codimension': report.codim,
        'normal_basis': [v.to_text() for v in report.normal_basis],
        'determinacy': report.determinacy,
        'units_outside_tangent_space': units_outside,
    }
    expected = {'codimension': 2, 'determinacy': 2 if h.q == 1 else 1, 'units_outside_tangent_space': True}
    return VerificationReport.compare(f"codim2/{name}/k={k}", computed, expected,
                                      note=NORMAL_FORMS[name].description)


def _random_fraction(rng: np.random.Generator) -> Fraction:
    return Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))


def random_normalised_pair(ctx: CrossCapContext, rng: np.random.Generator,
                           condition: Optional[Callable[[Dict[str, Fraction], Dict[str, Fraction]], bool]] = None
                           ) -> GermMap:
    """
    A random linear pair (h_1, h_2) changed in the target so that the
    (U_{k-2}, V_{k-1}) coefficient block is the identity.
    """
    space = ctx.target_vars
    u_last, v_last = f"U{ctx.k - 2}", f"V{ctx.k - 1}"
    while True:
        first = {n: _random_fraction(rng) for n in space.names}
        second = {n: _random_fraction(rng) for n in space.names}
        det = first[u_last] * second[v_last] - first[v_last] * second[u_last]
        if det == 0:
            continue
        # rows of the inverse of [[a, b], [A, B]]
        a, b, A, B = first[u_last], first[v_last], second[u_last], second[v_last]
        top = {n: (B * first[n] - b * second[n]) / det for n in space.names}
        bottom = {n: (-A * first[n] + a * second[n]) / det for n in space.names}
        if condition is None or condition(top, bottom):
            break
    components = [Poly.zero(space), Poly.zero(space)]
    for n in space.names:
        components[0] = components[0] + space.variable(n) * top[n]
        components[1] = components[1] + space.variable(n) * bottom[n]
    return GermMap(space, components)


def _generic_pair_condition(k: int):
    if k == 3:
        return lambda top, bottom: bottom["W1"] != 0
    if k == 4:
        # A1 != 0 brings U1·e2 in through h2·e2
        return lambda top, bottom: (4 * top["U1"] * bottom["U1"] + 3 * bottom["W1"] != 0
                                    and bottom["U1"] != 0)
    return None


def verify_generic_pairs(k: int, samples: Optional[int] = None, seed: Optional[int] = None) -> VerificationReport:
    """For k = 3, 4: normalised generic linear pairs already have codimension 2 and are 1-determined."""
    if k not in (3, 4):
        raise ValueError(f"Generic codimension-2 pairs exist only for k = 3, 4, got {k}")
    samples = samples or settings.negative_samples
    rng = np.random.default_rng(settings.random_seed if seed is None else seed)
    ctx = minimal_crosscap(k)
    condition = _generic_pair_condition(k)

    codims, determinacies = [], []
    for _ in range(samples):
        h = random_normalised_pair(ctx, rng, condition)
        report = codimension(ctx, h, max_degree=2)
        codims.append(report.codim)
        determinacies.append(report.determinacy)
    return VerificationReport.compare(
        f"codim2/generic-pairs/k={k}",
        {'samples': samples, 'codimension_2': codims.count(2), 'one_determined': determinacies.count(1)},
        {'samples': samples, 'codimension_2': samples, 'one_determined': samples},
        note="open conditions " + ("C1 != 0" if k == 3 else "4 a1 A1 + 3 C1 != 0, A1 != 0"),
    )


def verify_no_codim2_pairs(k: int, samples: Optional[int] = None, seed: Optional[int] = None) -> VerificationReport:
    """
    For k >= 5 no pair has codimension 2: normalised random 1-jets leave at
    least three directions outside T_e at the 1-jet level. For k = 5 the degree-1
    part is also covered once W1·e_2 is added.
    """
    if k < 5:
        raise ValueError(f"The negative pair check applies for k >= 5, got {k}")
    samples = samples or settings.negative_samples
    rng = np.random.default_rng(settings.random_seed if seed is None else seed)
    ctx = minimal_crosscap(k)
    w1_e2 = PolyVec([Poly.zero(ctx.target_vars), ctx.target_vars.variable("W1")])

    one_jet_codims, containments = [], []
    for _ in range(samples):
        h = random_normalised_pair(ctx, rng)
        ambient = JetBasis(h.source, 2, 1)
        tangent = module_span(tangent_generators(ctx, h, EXTENDED), [], ambient)
        one_jet_codims.append(quotient_dim(tangent)[0])
        if k == 5:
            extended = tangent.extended([vectorize(w1_e2, ambient)])
            containments.append(extended.includes(homogeneous_block(ambient, 1)))

    computed = {'samples': samples, 'min_one_jet_codimension': min(one_jet_codims),
                'one_jet_codimension_above_2': sum(c > 2 for c in one_jet_codims)}
    expected = {'samples': samples, 'one_jet_codimension_above_2': samples}
    if k == 5:
        computed['containment_with_W1e2'] = sum(containments)
        expected['containment_with_W1e2'] = samples
    return VerificationReport.compare(f"codim2/no-pairs/k={k}", computed, expected,
                                      note="the codimension at the 1-jet level exceeds 2")


def classify_codim2(k: int, max_degree: Optional[int] = None, samples: Optional[int] = None,
                    seed: Optional[int] = None) -> List[VerificationReport]:
    if k not in SUPPORTED_K:
        raise ValueError(f"classify_codim2 supports 2 <= k <= 6, got {k}")
    reports = [verify_codim2_form(k, name, max_degree) for name in applicable_forms(k)]
    if k in (3, 4):
        reports.append(verify_generic_pairs(k, samples, seed))
    if k >= 5:
        reports.append(verify_no_codim2_pairs(k, samples, seed))
    return reports


# ------------------------------------------------------------- counterexample

# Applied fields of each family, displayed up to scalar and modulo h*(𝔪_q)θ(h)
DISPLAYED_FAMILY_VECTORS = (
    ("F1_1", "W2, 0"),
    ("F1_2", "V1, 0"),
    ("F2_1", "-2*V2 + 3*W1, 2*U1"),
    ("F2_2", "V1, 3*W1"),
    ("F3_1", "W2, V1"),
    ("F3_2", "0, W2"),
)


def family_necessity_counterexample(trunc: int = 3) -> VerificationReport:
    """
    h = (V2 + W1, U1) on the k = 3 cross cap: without the Euler field the
    tangent module still has a 2-dimensional normal space, and dropping the
    first or the third family loses vectors of that module.
    """
    ctx = minimal_crosscap(3)
    space = ctx.target_vars
    h = parse_germ_text("V2 + W1, U1", space)
    ambient = JetBasis(space, 2, trunc)

    def module(context) -> object:
        return module_span(tangent_generators(context, h, EXTENDED), [], ambient)

    def vec(text: str) -> PolyVec:
        return parse_polyvec(text, space)

    euler_free = module(ctx.restricted([EULER]))
    codim, basis = quotient_dim(euler_free)
    full_codim, _ = quotient_dim(module(ctx))

    without_third = module(ctx.restricted([EULER, "F3"]))
    without_first = module(ctx.restricted([EULER, "F1"]))

    ideal = module_span(ideal_generators(h), [], ambient)
    displayed = {}
    for label, text in DISPLAYED_FAMILY_VECTORS:
        family, j = label.split("_")
        applied = apply_derivation(ctx.field(family, int(j)).components, h)
        target = vec(text)
        displayed[label] = contains(ideal.extended([vectorize(applied, ambient)]), target) \
            and not contains(ideal, target)

    computed = {
        'euler_free_codimension': codim,
        'euler_free_normal_basis': [v.to_text() for v in basis],
        'codimension_with_euler': full_codim,
        'without_F3_contains': {t: contains(without_third, vec(t)) for t in ("0, V1", "0, W2")},
        'without_F1_contains': {t: contains(without_first, vec(t)) for t in ("W2, 0", "0, V1")},
        'displayed_vectors_match': displayed,
    }
    expected = {
        'euler_free_codimension': 2,
        'euler_free_normal_basis': ["(1, 0)", "(0, 1)"],
        'codimension_with_euler': 2,
        'without_F3_contains': {"0, V1": False, "0, W2": False},
        'without_F1_contains': {"W2, 0": False, "0, V1": False},
        'displayed_vectors_match': {label: True for label, _ in DISPLAYED_FAMILY_VECTORS},
    }
    return VerificationReport.compare("counterexample/families", computed, expected,
                                      note="first and third families are both required")


# ------------------------------------------------------------------ pullbacks


def _expected_raw_pullback(k: int, name: str) -> Optional[str]:
    if name == "VW" and k == 3:
        return "u1, v1, y^3 + u1*y, v1*y - (y^3 + u1*y)*y^2"
    if name == "UV2":
        u_part = [f"u{i}" for i in range(1, k - 2)]
        v_part = [f"v{i}" for i in range(1, k)]
        w1 = " + ".join([f"y^{k}"] + [f"u{i}*y^{i}" for i in range(1, k - 2)]) + f" - v{k - 1}^2*y^{k - 2}"
        w2 = " + ".join(f"v{i}*y^{i}" for i in range(1, k))
        return ", ".join(u_part + v_part + [w1, w2])
    return None


def pullback_normal_form(k: int, name: str) -> Tuple[Optional[GermMap], VerificationReport]:
    ctx = minimal_crosscap(k)
    h = normal_form_germ(k, name)
    claim = f"pullback/{name}/k={k}"
    expect_failure = name in NON_TRANSVERSE

    try:
        pulled = sharp_pullback(ctx, h)
    except PullbackError as exc:
        transverse = not isinstance(exc, TransversalityError)
        report = VerificationReport(
            claim,
            PASS if expect_failure and not transverse else FAIL,
            {'error': str(exc), 'transverse': transverse},
            {'transverse': not expect_failure},
            note="φ_k is not transverse to h^-1(0)" if expect_failure else "",
        )
        return None, report

    computed = {
        'map': str(pulled),
        'target_names': list(pulled.target_names),
        'source_dim': len(pulled.source),
        'target_dim': pulled.q,
        'ae_codimension': codimension(ctx, h).codim,
        'transverse': True,
    }
    expected = {
        'source_dim': 2 * k - 2 - h.q,
        'target_dim': 2 * k - 1 - h.q,
        'ae_codimension': 2,
        'transverse': not expect_failure,
    }
    raw = _expected_raw_pullback(k, name)
    if raw is not None:
        computed['matches_raw_display'] = pulled == parse_germ_text(raw, pulled.source)
        expected['matches_raw_display'] = True
    note = f"simplified form {SIMPLIFIED_PULLBACKS[name]}" if name in SIMPLIFIED_PULLBACKS else ""
    return pulled, VerificationReport.compare(claim, computed, expected, note=note)


# -------------------------------------------------------- rescaling invariance


def _random_invertible(q: int, rng: np.random.Generator) -> List[List[Fraction]]:
    if q not in (1, 2):
        raise ValueError(f"Rescaling is implemented for q <= 2, got q={q}")
    while True:
        matrix = [[_random_fraction(rng) for _ in range(q)] for _ in range(q)]
        det = matrix[0][0] if q == 1 else matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
        if det != 0:
            return matrix


def rescaled(h: GermMap, matrix: Sequence[Sequence[Fraction]], permutation: Sequence[int]) -> GermMap:
    """M·P·h: permute the components, then mix them with an invertible matrix."""
    permuted = [h.components[i] for i in permutation]
    components = []
    for row in matrix:
        total = Poly.zero(h.source)
        for coeff, component in zip(row, permuted):
            total = total + component * coeff
        components.append(total)
    return GermMap(h.source, components)


def verify_rescaling_invariance(k: int, name: str, trials: int = 3,
                                seed: Optional[int] = None) -> VerificationReport:
    """Codimension does not change under invertible target rescalings and permutations."""
    ctx = minimal_crosscap(k)
    h = normal_form_germ(k, name)
    rng = np.random.default_rng(settings.random_seed if seed is None else seed)
    base = codimension(ctx, h).codim
    codims = []
    for _ in range(trials):
        permutation = [int(i) for i in rng.permutation(h.q)]
        codims.append(codimension(ctx, rescaled(h, _random_invertible(h.q, rng), permutation)).codim)
    return VerificationReport.compare(f"rescaling/{name}/k={k}",
                                      {'codimension': base, 'rescaled_codimensions': codims},
                                      {'rescaled_codimensions': [base] * trials})


# ---------------------------------------------------------------- full suite


def _job_fields(k):
    return [verify_vector_fields(k)]


def _job_scaling(k, l, case):
    return [verify_scaling_family(k, l, case)]


def _job_classify(k, samples, seed):
    return classify_codim2(k, samples=samples, seed=seed)


def _job_counterexample():
    return [family_necessity_counterexample()]


def _job_pullback(k, name):
    return [pullback_normal_form(k, name)[1]]


def _job_rescaling(k, name, seed):
    return [verify_rescaling_invariance(k, name, seed=seed)]


_JOBS = {
    'fields': _job_fields,
    'scaling': _job_scaling,
    'classify': _job_classify,
    'counterexample': _job_counterexample,
    'pullback': _job_pullback,
    'rescaling': _job_rescaling,
}


def _run_job(job) -> List[VerificationReport]:
    kind, args = job
    return _JOBS[kind](*args)


def suite_jobs(ks: Sequence[int], samples: Optional[int] = None, seed: Optional[int] = None) -> list:
    jobs = [('fields', (k,)) for k in ks]
    jobs += [('scaling', case) for case in SCALING_GRID if case[0] in ks]
    jobs += [('classify', (k, samples, seed)) for k in ks]
    if 3 in ks:
        jobs.append(('counterexample', ()))
    for k in ks:
        for name in applicable_forms(k):
            jobs.append(('pullback', (k, name)))
            jobs.append(('rescaling', (k, name, seed)))
    return jobs


def default_suite(ks: Sequence[int] = (2, 3, 4, 5), workers: Optional[int] = None,
                  samples: Optional[int] = None, seed: Optional[int] = None) -> List[VerificationReport]:
    """Run every verification for the given k; report order does not depend on workers."""
    workers = settings.workers if workers is None else workers
    jobs = suite_jobs(ks, samples, seed)
    logger.info("Running %d suite jobs on %d worker(s)", len(jobs), workers)

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_job, jobs))
    else:
        results = [_run_job(job) for job in jobs]
    return [report for batch in results for report in batch]
