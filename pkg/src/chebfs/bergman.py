"""Finite-level geodesic approximation through section-space spectra.

Endpoint potentials induce inner products on the degree-m sections by
integrating against their own volume densities.  Joint diagonalization of
the endpoint pair yields a basis orthonormal for the first product whose
rescalings by exp(lambda_j / 2) are orthonormal for the second, and the
interpolating potential

    phi_m(t, z) = (1/m) log sum_j exp(lambda_j t) |s_j(z)|^2

connects the endpoints.  For diagonal endpoints exp(tD) this interpolant
reproduces the exact path potential up to the explicit level constant
(1/m) log((n+m)!/m!) - (n/m) log(2 pi), at every level m; the defect of
that identity is pure roundoff and is the module's core check.
"""

from dataclasses import dataclass
from math import lgamma, log, pi

import numpy as np
from scipy.linalg import solve_triangular
from scipy.special import logsumexp

from .errors import DefinitenessError, InvalidInputError
from .gram import GramMatrix, gram_exact
from .hermitian import hermitize, mu_vector, validate_hermitian
from .potentials import fs_eval


def hilb_endpoint_gram(matrix, m: int) -> GramMatrix:
    """Gram of the monomials weighted by a potential's own volume density.

    Differs from the reference-volume Gram only by the global factor
    (2 pi)^n det(P): both integrands reduce to the same chart integral.
    The identity-matrix case has the diagonal closed form
    (2 pi)^n * I! / (m+n)!.
    """
    p = validate_hermitian(matrix)
    base = gram_exact(p, m)
    det = float(np.exp(np.sum(np.log(mu_vector(p)))))
    scale = (2.0 * pi) ** base.n * det
    return GramMatrix(n=base.n, m=base.m, basis=base.basis, entries=base.entries * scale)


@dataclass(frozen=True)
class BergmanSpectrum:
    """Jointly diagonalizing section basis for an endpoint pair.

    Row j of ``sections`` holds the coefficients of the j-th section over
    the lex monomial basis.  The rows are orthonormal for the first
    endpoint product; rescaled by exp(lambdas[j] / 2) they are orthonormal
    for the second.  ``lambdas`` is sorted descending.
    """

    m: int
    n: int
    basis: tuple[tuple[int, ...], ...]
    sections: np.ndarray
    lambdas: np.ndarray


def bergman_spectrum(p0, p1, m: int) -> BergmanSpectrum:
    """Jointly diagonalize the endpoint section products at level m."""
    p0 = validate_hermitian(p0)
    p1 = validate_hermitian(p1)
    if p0.shape != p1.shape:
        raise InvalidInputError(f"order mismatch: {p0.shape} vs {p1.shape}")
    h0 = hilb_endpoint_gram(p0, m)
    h1 = hilb_endpoint_gram(p1, m)
    try:
        chol = np.linalg.cholesky(h0.entries)
    except np.linalg.LinAlgError as exc:
        raise DefinitenessError("first endpoint Gram is not positive definite") from exc
    half = solve_triangular(chol, h1.entries, lower=True)
    whitened = hermitize(solve_triangular(chol, half.conj().T, lower=True).conj().T)
    eigenvalues, vectors = np.linalg.eigh(whitened)
    if eigenvalues[0] <= 0.0:
        raise DefinitenessError("second endpoint Gram is not positive definite")
    vectors = vectors.copy()
    for col in range(vectors.shape[1]):
        column = vectors[:, col]
        magnitudes = np.abs(column)
        lead = int(np.argmax(magnitudes > 1e-8 * magnitudes.max()))
        phase = column[lead] / abs(column[lead])
        vectors[:, col] = column * phase.conjugate()
    # eigh is ascending in the H1-norms, hence descending in the exponents.
    coeffs = solve_triangular(chol.conj().T, vectors, lower=False)
    return BergmanSpectrum(
        m=m,
        n=h0.n,
        basis=h0.basis,
        sections=coeffs.T,
        lambdas=-np.log(eigenvalues),
    )


def _monomial_values(basis, n, points: np.ndarray) -> np.ndarray:
    """Values of every basis monomial at chart points, shape (dim, N)."""
    vander = np.empty((len(basis), points.shape[0]), dtype=complex)
    for a, idx in enumerate(basis):
        mono = np.ones(points.shape[0], dtype=complex)
        for j in range(n):
            if idx[j]:
                mono = mono * points[:, j] ** idx[j]
        vander[a] = mono
    return vander


def bergman_geodesic_eval(spectrum: BergmanSpectrum, t: float, z) -> float:
    """Evaluate phi_m(t, z) = (1/m) log sum_j exp(lambda_j t) |s_j(z)|^2.

    Stabilized by log-sum-exp; sections vanishing at z contribute nothing.
    """
    point = np.atleast_1d(np.asarray(z, dtype=complex)).reshape(1, -1)
    if point.shape[1] != spectrum.n:
        raise InvalidInputError(
            f"chart point must have {spectrum.n} coordinates, got {point.shape[1]}"
        )
    section_values = spectrum.sections @ _monomial_values(
        spectrum.basis, spectrum.n, point
    )
    with np.errstate(divide="ignore"):
        terms = spectrum.lambdas * t + 2.0 * np.log(np.abs(section_values[:, 0]))
    return float(logsumexp(terms)) / spectrum.m


def level_constant(n: int, m: int) -> float:
    """The additive constant (1/m) log((n+m)!/m!) - (n/m) log(2 pi)."""
    return (lgamma(n + m + 1) - lgamma(m + 1)) / m - (n / m) * log(2.0 * pi)


@dataclass(frozen=True)
class ChartGrid:
    """Sample grid in (t, z) used by the exactness check."""

    t_points: int = 11
    z_points: int = 11
    z_radius: float = 3.0
    seed: int = 5


def bergman_exactness_defect(d, m: int, grid: ChartGrid | None = None) -> float:
    """Max deviation of phi_m from the diagonal path potential plus constant.

    Builds the level-m spectrum for the endpoints (I, exp(diag(d))) and
    returns  max over the grid of |phi_m(t, z) - phi(t, z) - constant|
    where phi(t, z) = log(v^H exp(t diag(d)) v) and the constant is
    ``level_constant``.  Exact in exact arithmetic at every level; the
    returned defect is pure roundoff.
    """
    if grid is None:
        grid = ChartGrid()
    diag = np.asarray(d, dtype=float)
    if diag.ndim != 1 or diag.size < 2:
        raise InvalidInputError("need a real diagonal vector of length >= 2")
    n = diag.size - 1
    identity = np.eye(n + 1, dtype=complex)
    endpoint = np.diag(np.exp(diag)).astype(complex)
    spectrum = bergman_spectrum(identity, endpoint, m)
    constant = level_constant(n, m)

    ts = np.linspace(0.0, 1.0, grid.t_points)
    if n == 1:
        line = np.linspace(-grid.z_radius, grid.z_radius, grid.z_points)
        points = (line * np.exp(0.37j)).reshape(-1, 1)
    else:
        rng = np.random.default_rng(grid.seed)
        radii = grid.z_radius * np.sqrt(rng.random((grid.z_points, n)))
        angles = 2.0 * pi * rng.random((grid.z_points, n))
        points = radii * np.exp(1j * angles)

    section_values = spectrum.sections @ _monomial_values(spectrum.basis, n, points)
    with np.errstate(divide="ignore"):
        log_sq = 2.0 * np.log(np.abs(section_values))  # (dim, N)
    worst = 0.0
    for t in ts:
        phi_m = logsumexp(spectrum.lambdas[:, None] * t + log_sq, axis=0) / m
        path_matrix = np.diag(np.exp(t * diag)).astype(complex)
        for k in range(points.shape[0]):
            phi = fs_eval(path_matrix, points[k])
            worst = max(worst, abs(float(phi_m[k]) - phi - constant))
    return worst
