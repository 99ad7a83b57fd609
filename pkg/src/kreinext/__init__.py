"""kreinext: J-self-adjoint 2x2 extension families with stable C-symmetry.

Construction and classification of the four-parameter extension family,
its commuting-involution solver, discrete-spectrum computation through a
scalar Weyl function, and an independent finite-difference shooting
oracle for cross-validation.
"""

from .core import (
    CsymParams,
    PositivityReport,
    build_csym,
    build_r_omega,
    cayley_theta,
    cmat2_from_json,
    cmat2_to_json,
    csym_from_transition,
    default_tol,
    factor_exponent,
    kshmulyan_transform,
    limit_transition,
    opnorm2,
    pauli_basis,
    projections_from_transition,
    transition_from_csym,
    verify_csym,
    SIGMA1,
    SIGMA2,
    SIGMA3,
)
from .errors import (
    DomainError,
    KreinError,
    PositivityError,
    SingularTransformError,
    StabilityError,
)
from .extensions import (
    EigenPair,
    ExtensionClass,
    ExtParams,
    ResolventParam,
    adjoint_params,
    build_k,
    cayley_to_relation,
    classify,
    csym_of_extension,
    k_eigenvalues,
    relation_eigenvalues,
    solve_chi,
    spectral_angle,
)
from .oracle import MatchReport, OracleConfig, interface_system, scan_spectrum, shoot
from .pointint import (
    BoundaryData,
    PointInteractionWeyl,
    closed_form_eigenvalues,
    gamma_maps,
    gamma_matrices,
    m_free,
)
from .spectral import (
    ChannelCondition,
    EigenvalueHit,
    ProbeGrid,
    SolverOptions,
    SpectrumReport,
    WeylFunction,
    channel_conditions,
    det_condition,
    find_discrete_spectrum,
    kernel_gram,
    nonreal_spectrum_probe,
)
from .wexpr import ExpressionWeyl, parse_weyl_expression

__version__ = "0.1.0"

__all__ = [
    "BoundaryData",
    "ChannelCondition",
    "CsymParams",
    "DomainError",
    "EigenPair",
    "EigenvalueHit",
    "ExpressionWeyl",
    "ExtParams",
    "ExtensionClass",
    "KreinError",
    "MatchReport",
    "OracleConfig",
    "PointInteractionWeyl",
    "PositivityError",
    "PositivityReport",
    "ProbeGrid",
    "ResolventParam",
    "SIGMA1",
    "SIGMA2",
    "SIGMA3",
    "SingularTransformError",
    "SolverOptions",
    "SpectrumReport",
    "StabilityError",
    "WeylFunction",
    "adjoint_params",
    "build_csym",
    "build_k",
    "build_r_omega",
    "cayley_theta",
    "cayley_to_relation",
    "channel_conditions",
    "classify",
    "closed_form_eigenvalues",
    "cmat2_from_json",
    "cmat2_to_json",
    "csym_from_transition",
    "csym_of_extension",
    "default_tol",
    "det_condition",
    "factor_exponent",
    "find_discrete_spectrum",
    "gamma_maps",
    "gamma_matrices",
    "interface_system",
    "k_eigenvalues",
    "kernel_gram",
    "kshmulyan_transform",
    "limit_transition",
    "m_free",
    "nonreal_spectrum_probe",
    "opnorm2",
    "parse_weyl_expression",
    "pauli_basis",
    "projections_from_transition",
    "relation_eigenvalues",
    "scan_spectrum",
    "shoot",
    "solve_chi",
    "spectral_angle",
    "transition_from_csym",
    "verify_csym",
    "__version__",
]
