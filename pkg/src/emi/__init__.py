"""High-precision midpoint quadrature with Taylor-corrected subintervals.

Two arithmetic modes run through the whole stack: exact rationals
(:data:`Rat`) as the correctness oracle, and arbitrary-precision decimals
(:class:`Real`) as the performance path.  On top of the quadrature engine
sits a pi/arctangent suite with digit matching against an embedded
reference expansion, plus a CLI (``emi``).
"""

from .errors import (
    EmiError,
    ExactModeUnsupportedError,
    JetMismatchError,
    NumeralParseError,
    PoleAtCenterError,
    PrecisionExceededError,
    UnknownIntegrandError,
)
from .precision import (
    GUARD_DIGITS,
    MIN_PRECISION,
    Rat,
    Real,
    as_rat,
    rat_to_real,
    render_decimal,
    render_rat,
)
from .jets import (
    IntegrandSpec,
    Jet,
    get_integrand,
    integrand_jet,
    jet_affine,
    jet_mul,
    jet_reciprocal,
)
from .quadrature import (
    EmiConfig,
    QuadResult,
    closed_form_arctan,
    emi_integrate,
    emi_subinterval,
    emi_weights,
    pairwise_sum,
)
from .pi_suite import (
    REFERENCE_PI,
    ConvergenceReport,
    ReferencePi,
    ScanRow,
    convergence_scan,
    matched_digits,
    pi_closed_form,
    pi_emi,
    report_to_csv,
    report_to_json,
    term_count,
)
from .selftest import GroupResult, group_names, run_selftest

__version__ = "0.1.0"

__all__ = [
    "EmiError",
    "ExactModeUnsupportedError",
    "JetMismatchError",
    "NumeralParseError",
    "PoleAtCenterError",
    "PrecisionExceededError",
    "UnknownIntegrandError",
    "GUARD_DIGITS",
    "MIN_PRECISION",
    "Rat",
    "Real",
    "as_rat",
    "rat_to_real",
    "render_decimal",
    "render_rat",
    "IntegrandSpec",
    "Jet",
    "get_integrand",
    "integrand_jet",
    "jet_affine",
    "jet_mul",
    "jet_reciprocal",
    "EmiConfig",
    "QuadResult",
    "closed_form_arctan",
    "emi_integrate",
    "emi_subinterval",
    "emi_weights",
    "pairwise_sum",
    "REFERENCE_PI",
    "ConvergenceReport",
    "ReferencePi",
    "ScanRow",
    "convergence_scan",
    "matched_digits",
    "pi_closed_form",
    "pi_emi",
    "report_to_csv",
    "report_to_json",
    "term_count",
    "GroupResult",
    "group_names",
    "run_selftest",
    "__version__",
]
