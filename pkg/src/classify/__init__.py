"""
Classify Package

- VerificationReport: pass/fail record of a recomputed claim
- suites: vector fields, scaling series, codimension-2 forms, pullbacks
- default_suite: every verification for a range of k
"""

from .reports import FAIL, PASS, VerificationReport, jsonable
from .suites import (
    DISPLAYED_FAMILY_VECTORS,
    NON_TRANSVERSE,
    NORMAL_FORMS,
    SCALING_CASES,
    SCALING_GRID,
    SIMPLIFIED_PULLBACKS,
    NormalForm,
    applicable_forms,
    classify_codim2,
    default_suite,
    family_necessity_counterexample,
    normal_form_germ,
    pullback_normal_form,
    random_normalised_pair,
    rescaled,
    scaling_family_texts,
    suite_jobs,
    verify_codim2_form,
    verify_generic_pairs,
    verify_no_codim2_pairs,
    verify_rescaling_invariance,
    verify_scaling_family,
    verify_vector_fields,
    w1_correction,
)

__all__ = [
    'DISPLAYED_FAMILY_VECTORS',
    'FAIL',
    'NON_TRANSVERSE',
    'NORMAL_FORMS',
    'PASS',
    'SCALING_CASES',
    'SCALING_GRID',
    'SIMPLIFIED_PULLBACKS',
    'NormalForm',
    'VerificationReport',
    'applicable_forms',
    'classify_codim2',
    'default_suite',
    'family_necessity_counterexample',
    'jsonable',
    'normal_form_germ',
    'pullback_normal_form',
    'random_normalised_pair',
    'rescaled',
    'scaling_family_texts',
    'suite_jobs',
    'verify_codim2_form',
    'verify_generic_pairs',
    'verify_no_codim2_pairs',
    'verify_rescaling_invariance',
    'verify_scaling_family',
    'verify_vector_fields',
    'w1_correction',
]
