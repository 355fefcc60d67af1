"""Remainders of euclidean division of analytic germs by complex polynomials.

The remainder of ``f`` by ``D = c * prod (X - a)**m`` depends only on the
first ``m`` Taylor coefficients of ``f`` at each root ``a``.  Partial
fractions, matrix functions, linear recurrences and constant coefficient
ODEs are all computed from that single operation.
"""

from .crt import (
    DivisionResult,
    NewtonInterpolation,
    PFDecomposition,
    as_factored,
    coeff_c_ak,
    complete_homogeneous,
    crt_lift,
    crt_project,
    divrem_generalized,
    newton_interpolation,
    partial_fractions,
    remainder_via_cak,
    serret_quotient,
    taylor_gauss_remainder,
    universal_remainder_xr,
)
from .dynamics import (
    ExpPolyFunction,
    ODEProblem,
    RecurrenceProblem,
    SampledFunction,
    euler_solve,
    exp_remainder_functions,
    g_continuous,
    g_discrete,
    ode_residual_check,
    ode_solve_collet,
    recurrence_solve,
    remainder_table,
)
from .errors import InputError, NumericalError, QuadratureError, RemcalcError
from .expr import format_poly_expr, parse_poly_expr
from .jets import (
    ExpGerm,
    Jet,
    PolyGerm,
    PrincipalPart,
    RationalGerm,
    as_germ,
    jet_exp_times,
    jet_invert,
    jet_mul,
    jet_of_exp,
    jet_of_poly,
)
from .matrixfun import (
    AnnihilatorCertificate,
    characteristic_polynomial,
    matrix_exp,
    matrix_function,
    minimal_polynomial,
    poly_apply,
)
from .poly import X, FactoredPoly, Poly, companion_matrix, find_roots, poly_divrem_classical
from .quadrature import adaptive_gauss_legendre

__version__ = "0.1.0"
