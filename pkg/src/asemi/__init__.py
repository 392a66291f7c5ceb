"""A_alpha seminorms and the classical A-seminorm family for finite-dimensional
operators on a space with a positive semidefinite weight A."""
from .errors import (AlphaOutOfRange, ConvergenceFailure, DimensionMismatch, NotABounded, NotHermitian,
                     NotInBA, NotPSD, ParseError, PreconditionUnmet, SemiNormError)
from .inequalities import (BoundReport, CampaignConfig, CampaignReport, TheoremId, attainment_gap,
                           commuting_partner, evaluate_bound, minimize_over_alpha, run_campaign,
                           sharp_partner)
from .semihilbert import (BAOperator, SemiHilbertContext, a_adjoint, a_inner, a_norm_vec, cartesian_parts,
                          compress, is_a_selfadjoint, is_a_unitary, make_context, random_a_unitary,
                          random_ba_operator, random_positive)
from .seminorms import (Effort, RadiusEstimate, a_crawford, a_min_modulus, a_numerical_radius,
                        a_operator_norm, alpha_seminorm, alpha_seminorm_direct, alpha_seminorm_oracle)

__version__ = "0.1.0"
