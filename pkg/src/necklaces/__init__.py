"""Exact-arithmetic toolkit for necklace polynomials.

Construction and evaluation of the Möbius divisor-sum family, two
independent brute-force counting oracles (Lyndon words and a finite
field irreducible census), and exact verification scans for the
monotonicity, bound, positivity, and log-convexity properties of the
family.  Everything numeric is arbitrary-precision rational; no floats.
"""
from .analysis import (
    ProbeExhausted,
    RationalGrid,
    classify_degree_monotonicity,
    default_grid,
    negative_dip_probe,
    negative_dip_scan,
    ratio_limit_check,
    scan_bounds,
    scan_bracket_normalized,
    scan_derivative_positive,
    scan_log_convexity,
    scan_normalized_increasing,
    scan_positive,
    scan_shift_and_dominant,
    verify_delta_factorizations,
)
from .coeffs import (
    falling_moment,
    jordan_gap,
    jordan_gap_scan,
    moment_gap,
    moment_gap_via_pairs,
    positivity_scan,
    verify_moment_recursion,
)
from .exactpoly import ONE, Poly, X, parse_rational
from .necklace import (
    NecklaceFamily,
    bracket_poly,
    delta_factored,
    delta_poly,
    error_poly,
    geometric_gap_poly,
    growth_poly,
    necklace_eval_exact,
    necklace_eval_int,
    necklace_eval_recursive,
    necklace_poly,
    shared_family,
    theta_poly,
    verify_bracket_product_rule,
    verify_moebius_inversion,
    verify_product_rule,
)
from .numtheory import (
    FactorTable,
    divisors,
    euler_phi,
    factorize,
    falling_factorial,
    is_prime,
    jordan_totient,
    lcm_divisor_pairs,
    moebius,
    smallest_prime_factor,
)
from .oracles import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    CensusReport,
    FieldSpec,
    build_field,
    census,
    count_lyndon,
    count_primitive_strings,
    max_degree_within_budget,
)
from .reports import ScanReport, Witness

__version__ = "0.1.0"
