"""Certified lower bounds for integer polynomials on the standard simplex."""

__version__ = "0.1.0"

from .arith import SPoly, rational_compare
from .bounds import (
    BoundReport,
    ClosedFormParams,
    certified_lower_bound,
    closed_form_full,
    closed_form_interior,
    closed_form_simplified,
    example_family,
    theorem_induction_check,
)
from .charpoly import (
    cauchy_reciprocal_bound,
    extract_S0,
    interior_analysis,
    interior_bound,
    newton_charpoly,
    power_traces,
)
from .multipoly import (
    MultiPoly,
    ProblemInstance,
    bitsize,
    build_R,
    eval_rational,
    parse_poly,
    partial_derivative,
    restrict_zero,
    substitute_simplex_hyperplane,
    total_degree,
)
from .oracle import GridSpec, direct_charpoly, grid_min, numeric_membership_check
from .quotient import (
    MonomialBasisU,
    MultMatrix,
    ReductionTable,
    build_basis,
    mult_matrix,
    reduce_monomial,
    verify_quotient_consistency,
)
