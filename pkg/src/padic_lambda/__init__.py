"""Exact p-adic arithmetic, dynamics and Gibbs measures of the lambda-model."""
from .errors import (BadField, BadParameter, EnumerationGuard, IdenticalPrefix,
                     NotARoot, NotFixed, NotPrime, NotSimpleRoot, OutOfDomain,
                     PadicError, PadicZeroDivision, PoleHit, PrecisionExhausted,
                     RegimeViolation, RegimeWarning, ZeroPartition)
from .padic import DEFAULT_PRECISION, NormValue, PAdicBall, PAdicNumber, exp_p
from .residues import (Polynomial, hensel_lift, kth_roots_of_minus_one_mod_p,
                       poly_roots_Qp)
from .dynamics import (RationalMapOnQp, fixed_points, make_Ep_regime_g,
                       make_ising_potts, make_lambda_TI, make_small_rho_f,
                       periodic_points)
from .subshift import build_ising_repeller, incidence_matrix, verify_shift_conjugacy
from .gibbs import (InteractionSpec, LevelPeriodic, ModelParams, TranslationInvariant,
                    boundedness_classify, check_compatibility, cylinder_measure,
                    hm_periodic_fields, lambda_k2_analysis, partition_function,
                    ti_census_ising, ti_closed_form)

__all__ = [
    "BadField", "BadParameter", "boundedness_classify", "build_ising_repeller",
    "check_compatibility", "cylinder_measure", "DEFAULT_PRECISION", "EnumerationGuard",
    "exp_p", "fixed_points", "hensel_lift", "hm_periodic_fields", "IdenticalPrefix",
    "incidence_matrix", "InteractionSpec", "kth_roots_of_minus_one_mod_p",
    "lambda_k2_analysis", "LevelPeriodic", "make_Ep_regime_g", "make_ising_potts",
    "make_lambda_TI", "make_small_rho_f", "ModelParams", "NormValue", "NotARoot",
    "NotFixed", "NotPrime", "NotSimpleRoot", "OutOfDomain", "PAdicBall", "PadicError",
    "PAdicNumber", "PadicZeroDivision", "partition_function", "periodic_points",
    "PoleHit", "poly_roots_Qp", "Polynomial", "PrecisionExhausted", "RationalMapOnQp",
    "RegimeViolation", "RegimeWarning", "ti_census_ising", "ti_closed_form",
    "TranslationInvariant", "verify_shift_conjugacy", "ZeroPartition",
]
