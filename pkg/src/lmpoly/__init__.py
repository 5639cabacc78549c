"""Two-variable general lambda-matrix polynomials.

A library (and `lmp` command line) for building the polynomials through
four independent constructions, checking the identities they satisfy,
their q-analogues, and emitting the zeros / surface datasets behind the
figure pipelines.
"""

from .errors import (CostGuard, Defective, DegenerateLeadingCoefficient, DegreeCapExceeded,
                     DivergenceRegion, LmpError, ModeError, NonpositiveArgument,
                     NotPositiveStable, PoleError, PrecisionInsufficient, ZeroPhi0)
from .modes import EXACT, F64, Mode, mp, parse_mode, parse_scalar
from .matfun import (CMatrix, EigSystem, check_positive_stable, cmatrix_from_json,
                     cmatrix_to_json, complex_log_gamma, eig_decompose, gamma_weight,
                     gamma_weight_exact, weight_provider)
from .umbral import (JHAT, M_STATE, QHAT, UmbralExpr, X, apply_derivative_x,
                     apply_multiplicative, evaluate, umul, upow)
from .families import (PhiFamily, custom, gamma_seq, general_poly, gould_hopper, hermite,
                       generalized_laguerre, laguerre, parse_family, phi_gf, phi_n,
                       phi_term, tricomi_c0, truncated_exp)
from .polynomials import (XPoly, cos_R, determinant_form, e0_R, lambda1v,
                          lambda_matrix_2var, lambda2v_convolution, lambda2v_series,
                          lambda2v_umbral, scalar_lambda, to_xpoly)
from .identities import (SUITE_NAMES, VerifyReport, run_suite, run_suites, verify_derivative,
                         verify_determinant, verify_difference, verify_difference_and_integral,
                         verify_double_shift, verify_egf, verify_integral, verify_monomiality,
                         verify_ogf, verify_q_limit, verify_series_equality, verify_shift,
                         verify_triangular_system)
from .qlambda import (QContext, nwa_expand, q_binomial, q_bracket, q_factorial, q_gamma,
                      q_gamma_weight, q_hermite, q_hermite_lambda, q_hermite_lambda_coeffs)
from .zeros import (ZeroSet, q_surface_grid, real_zeros_table, roots, surface_grid,
                    zero_stacks, zeros_of_lambda, zeros_of_q_hermite_lambda)

__version__ = "0.1.0"
