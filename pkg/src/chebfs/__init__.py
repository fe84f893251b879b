"""Convex transforms of matrix potentials on projective space.

A positive definite Hermitian matrix P of order n+1 defines a potential
log(v^H P v) on the standard chart of n-dimensional projective space.  This
package computes, at desk scale: the trailing-minor invariants of P, the
closed-form convex transform of the potential on the unit simplex together
with its finite-level approximants, geodesic paths A^H exp(tD) A between
potentials and their classification by triangular factorizations,
finite-level interpolating potentials built from section-space spectra, and
the mixed Monge-Ampere energy with its exact simplex-side form.
"""

from .bergman import (
    BergmanSpectrum,
    ChartGrid,
    bergman_exactness_defect,
    bergman_geodesic_eval,
    bergman_spectrum,
    hilb_endpoint_gram,
    level_constant,
)
from .chebyshev import (
    AffineCurveTest,
    ChebyshevPotential,
    ConvergenceReport,
    ConvexityCheck,
    LegendreCheck,
    affine_in_t_test,
    cheb_closed_form,
    cheb_finite_m,
    convergence_report,
    convexity_sample_check,
    round_to_lattice,
    toric_legendre_check,
)
from .energy import (
    EnergyReport,
    calibrated_sign,
    energy_affine_along_geodesic,
    energy_chart,
    energy_okounkov,
    energy_report,
    fs_hessian,
)
from .errors import (
    AccuracyError,
    ChebfsError,
    DefinitenessError,
    DomainError,
    InternalInconsistencyError,
    InvalidInputError,
)
from .gram import (
    ChebyshevSection,
    GramMatrix,
    chebyshev_norms,
    chebyshev_section_coeffs,
    gram_exact,
    gram_numeric,
    section_norm_closed_form,
)
from .hermitian import (
    AffineDecomposition,
    GeodesicPath,
    TriangularDecomposition,
    affine_mu_decompose,
    congruence,
    hermitize,
    ldl_unitriangular,
    mu_vector,
    path_eval,
    reverse_cholesky,
    simultaneous_diagonalize,
    trailing_minor_det,
    validate_hermitian,
)
from .okounkov import (
    lattice_points,
    lex_compare,
    section_space_dim,
    simplex_interior_contains,
)
from .potentials import counterexample_path, fs_eval, geodesic_from_endpoints
from .quadrature import PolarScheme, SobolScheme

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "AffineCurveTest",
    "AffineDecomposition",
    "BergmanSpectrum",
    "ChartGrid",
    "ChebfsError",
    "ChebyshevPotential",
    "ChebyshevSection",
    "ConvergenceReport",
    "ConvexityCheck",
    "DefinitenessError",
    "DomainError",
    "EnergyReport",
    "GeodesicPath",
    "GramMatrix",
    "InternalInconsistencyError",
    "InvalidInputError",
    "LegendreCheck",
    "PolarScheme",
    "SobolScheme",
    "TriangularDecomposition",
    "affine_in_t_test",
    "affine_mu_decompose",
    "bergman_exactness_defect",
    "bergman_geodesic_eval",
    "bergman_spectrum",
    "calibrated_sign",
    "cheb_closed_form",
    "cheb_finite_m",
    "chebyshev_norms",
    "chebyshev_section_coeffs",
    "congruence",
    "convergence_report",
    "convexity_sample_check",
    "counterexample_path",
    "energy_affine_along_geodesic",
    "energy_chart",
    "energy_okounkov",
    "energy_report",
    "fs_eval",
    "fs_hessian",
    "geodesic_from_endpoints",
    "gram_exact",
    "gram_numeric",
    "hermitize",
    "hilb_endpoint_gram",
    "lattice_points",
    "ldl_unitriangular",
    "level_constant",
    "lex_compare",
    "mu_vector",
    "path_eval",
    "reverse_cholesky",
    "round_to_lattice",
    "section_norm_closed_form",
    "section_space_dim",
    "simplex_interior_contains",
    "simultaneous_diagonalize",
    "toric_legendre_check",
    "trailing_minor_det",
    "validate_hermitian",
]
