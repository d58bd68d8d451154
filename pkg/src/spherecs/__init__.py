"""Coherent states, heat kernels, and the Segal-Bargmann transform for a
quantum particle on the d-sphere (d = 1, 2, 3)."""

__version__ = "0.1.0"

from ._accel import BACKEND, set_threads
from .errors import (ConstraintViolation, ConvergenceError,
                     CutoffInsufficient, OverflowGuard, SphereCSError,
                     UnsupportedDimension)
from .params import FlatParams, ModelParams
from .geometry import (ComplexSpherePoint, PhasePoint, complex_angle,
                       complexify, complexify_series, decomplexify,
                       dirac_bracket, random_phase_point)
from .kernels import (KernelEvalRequest, TruncationSpec, nu, rho,
                      rho_spectral, rho_theta)
from .basis import (BasisSpec, OperatorSet, build_annihilation,
                    build_annihilation_explicit, build_annihilation_polar,
                    build_basis, constraint_residual, euclidean_algebra_check)
from .coherent import (CoherentState, coefficients_in_basis,
                       eigenvector_residual, norm_squared, overlap,
                       position_wavefunction, reproducing_kernel)
from .quadrature import PhaseQuadrature, build_phase_quadrature, certify_p_max
from .transform import (adjoint_inverse_coeffs, husimi_report,
                        isometry_gram, resolve_identity_matrix,
                        round_trip_residual, sb_inverse_pointwise,
                        sb_transform)
from .flat import (flat_coherent_wavefunction, flat_complexify,
                   flat_inversion_residual, flat_resolution_matrix,
                   small_tau_limit_check)
from .verify import SUITES, run_suite, run_suites

__all__ = [
    "__version__", "BACKEND", "set_threads",
    "SphereCSError", "ConstraintViolation", "ConvergenceError",
    "CutoffInsufficient", "OverflowGuard", "UnsupportedDimension",
    "ModelParams", "FlatParams",
    "PhasePoint", "ComplexSpherePoint", "complexify", "complexify_series",
    "decomplexify", "complex_angle", "dirac_bracket", "random_phase_point",
    "TruncationSpec", "KernelEvalRequest", "rho", "rho_theta",
    "rho_spectral", "nu",
    "BasisSpec", "OperatorSet", "build_basis", "build_annihilation",
    "build_annihilation_explicit", "build_annihilation_polar",
    "euclidean_algebra_check", "constraint_residual",
    "CoherentState", "position_wavefunction", "coefficients_in_basis",
    "reproducing_kernel", "overlap", "norm_squared", "eigenvector_residual",
    "PhaseQuadrature", "build_phase_quadrature", "certify_p_max",
    "resolve_identity_matrix", "isometry_gram", "sb_transform",
    "sb_inverse_pointwise", "round_trip_residual", "adjoint_inverse_coeffs",
    "husimi_report",
    "flat_complexify", "flat_coherent_wavefunction",
    "flat_resolution_matrix", "flat_inversion_residual",
    "small_tau_limit_check",
    "SUITES", "run_suite", "run_suites",
]
