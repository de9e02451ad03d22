"""Exact and floating computations on the supergroups (C^{1|1})^x_k and S^{1|1}."""

from .dk_group import (AdditivePoint, SuperPoint, add_inv, add_mul, cover_p, g_inv, g_mul,
                       rescale, super_exp)
from .errors import SuperError
from .grassmann import GrassmannNumber, gr_conj, gr_exp, gr_inv, gr_mul
from .peter_weyl import (CoefficientTable, SuperFunction, expand, matrix_coefficient,
                         reconstruct, truncation_error)
from .real_forms import (Conjugation, LieInvolution, RealFormBasis, RealStructure, apply_rho,
                         apply_s, chart_coords, differential_at_identity, is_fixed_point,
                         lie_involution_solve, real_form_bracket)
from .scalars import ExactScalar
from .sections_susy import (Laurent, LaurentEndo, Section, SuperDerivation, SuperOneForm,
                            pullback_form, solve_susy_gauge)
from .shcp_reps import (GradedRep, PiMinus, RepBlock, SU11Element, SuperWeightSpace,
                        berezinian_1x1, check_rep, decompose, make_weight_rep,
                        matrix_exponential, su11_mul)

__version__ = "0.1.0"

__all__ = [
    "AdditivePoint",
    "CoefficientTable",
    "Conjugation",
    "ExactScalar",
    "GradedRep",
    "GrassmannNumber",
    "Laurent",
    "LaurentEndo",
    "LieInvolution",
    "PiMinus",
    "RealFormBasis",
    "RealStructure",
    "RepBlock",
    "SU11Element",
    "Section",
    "SuperDerivation",
    "SuperError",
    "SuperFunction",
    "SuperOneForm",
    "SuperPoint",
    "SuperWeightSpace",
    "add_inv",
    "add_mul",
    "apply_rho",
    "apply_s",
    "berezinian_1x1",
    "chart_coords",
    "check_rep",
    "cover_p",
    "decompose",
    "differential_at_identity",
    "expand",
    "g_inv",
    "g_mul",
    "gr_conj",
    "gr_exp",
    "gr_inv",
    "gr_mul",
    "is_fixed_point",
    "lie_involution_solve",
    "make_weight_rep",
    "matrix_coefficient",
    "matrix_exponential",
    "pullback_form",
    "real_form_bracket",
    "reconstruct",
    "rescale",
    "solve_susy_gauge",
    "su11_mul",
    "super_exp",
    "truncation_error",
]
