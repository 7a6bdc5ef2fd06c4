"""Exact chi-squared dissimilarity measures, their axioms, and Pearson tests."""

from .axioms import (
    CheckReport,
    SuiteConfig,
    catalogue,
    check_deviations_balancedness,
    check_homogeneity,
    check_inverse_effects,
    enumerate_db_pairs,
    harmonic_factor,
    independence_report,
    run_axiom_suite,
)
from .exactnum import (
    CountVector,
    IntVector,
    ReferencePoint,
    SimplexPoint,
    lcm_denominators,
    normalize,
    reference,
    scaled_reference,
    uniform,
    unit_vector,
)
from .measures import ABS_COUNTER, CHI2_0, CHI2_1, SQ_COUNTER, MeasureSpec, chi2_0, chi2_1, evaluate, phi_weighted, scaled
from .reconstruction import (
    QuadraticForm,
    Segment,
    derive_gamma,
    fit_parabola_three_points,
    fit_quadratic_form,
    chi2_form_coefficients,
    verify_gamma_constancy,
)
from .stats import chisq_survival, pearson_test

__version__ = "0.1.0"
