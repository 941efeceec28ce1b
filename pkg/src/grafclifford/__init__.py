"""Exact-arithmetic engine for the Clifford algebra of exterior forms.

The package realizes the Clifford product directly on exterior forms
over a pseudo-Euclidean coframe (the signed contracted-wedge product),
builds exact matrix representations and their admissible bilinear
pairings, verifies the quadratic Fierz identities of spinor bilinears
in all three commutant cases, and classifies spinors on signature
(1,2) and pinors on signature (9,0) by the zero pattern of their
covariant forms.  All arithmetic is integer/rational; every check is
an exact equality.
"""

from .errors import (
    DimensionMismatch,
    FormParseError,
    GrafError,
    NotASpinor,
    StructureError,
    UnsupportedSignature,
)
from .exterior import (
    Blade,
    Form,
    Metric,
    Signature,
    contracted_wedge,
    grade_involution,
    grade_project,
    interior,
    rational_from_str,
    rational_to_str,
    reversal,
    wedge,
)
from .graf import (
    TruncationRegimeWarning,
    TruncationSplit,
    graf_product,
    hodge,
    in_truncation_regime,
    lower_projection,
    projector_pm,
    truncate,
    truncated_product,
    volume_form,
    volume_square_sign,
)
from .matrixrep import (
    CASE_ALMOST_COMPLEX,
    CASE_NORMAL,
    CASE_QUATERNIONIC,
    AbsType,
    MainSubalgebra,
    Rep,
    abs_type,
    build_rep,
    build_structure,
    commutant_basis,
    lambda_form,
    rep_from_json,
)
from .bilinear import (
    Pairing,
    admissible_pairings,
    b_eval,
    solve_pairing,
    standard_pairing,
    table_sigma,
    table_tau,
    transpose_check,
    vanishing_ranks,
)
from .fierz import (
    Covariant,
    FierzVerdict,
    IdentityResult,
    check_fierz,
    covariant,
    endo_E,
    fundamental_identity_holds,
    reconstruct_check,
)
from .classify import (
    CLASS_NAMES_12,
    CLASS_NAMES_90,
    AppendixVerdict,
    CensusReport,
    ClassReport,
    Covariants12,
    Covariants90,
    ReducedVerdict,
    appendix_check,
    census,
    check_reduced_12,
    check_reduced_90,
    class_report,
    classify_12,
    classify_90,
    covariants_12,
    covariants_90,
    majorana_project,
    master_identity_90,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "GrafError",
    "DimensionMismatch",
    "UnsupportedSignature",
    "StructureError",
    "NotASpinor",
    "FormParseError",
    # exterior algebra
    "Signature",
    "Metric",
    "Blade",
    "Form",
    "wedge",
    "interior",
    "contracted_wedge",
    "grade_project",
    "grade_involution",
    "reversal",
    "rational_from_str",
    "rational_to_str",
    # Clifford product layer
    "graf_product",
    "volume_square_sign",
    "volume_form",
    "hodge",
    "projector_pm",
    "truncate",
    "TruncationSplit",
    "lower_projection",
    "in_truncation_regime",
    "truncated_product",
    "TruncationRegimeWarning",
    # representations
    "AbsType",
    "abs_type",
    "Rep",
    "build_rep",
    "rep_from_json",
    "lambda_form",
    "commutant_basis",
    "MainSubalgebra",
    "build_structure",
    "CASE_NORMAL",
    "CASE_ALMOST_COMPLEX",
    "CASE_QUATERNIONIC",
    # pairings
    "Pairing",
    "solve_pairing",
    "admissible_pairings",
    "standard_pairing",
    "b_eval",
    "table_sigma",
    "table_tau",
    "transpose_check",
    "vanishing_ranks",
    # Fierz machinery
    "Covariant",
    "covariant",
    "endo_E",
    "fundamental_identity_holds",
    "reconstruct_check",
    "check_fierz",
    "FierzVerdict",
    "IdentityResult",
    # classification
    "Covariants12",
    "Covariants90",
    "ReducedVerdict",
    "ClassReport",
    "CensusReport",
    "AppendixVerdict",
    "CLASS_NAMES_12",
    "CLASS_NAMES_90",
    "majorana_project",
    "covariants_12",
    "covariants_90",
    "check_reduced_12",
    "check_reduced_90",
    "master_identity_90",
    "classify_12",
    "classify_90",
    "class_report",
    "census",
    "appendix_check",
]
