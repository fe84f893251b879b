"""Weighted Gram matrices of the monomial basis and lex-orthogonal sections.

The degree-m monomials z^I (with the homogenizing trailing exponent) carry
the inner product

    <f, g> = (1/pi)^n * integral of conj(f) g (v^H P v)^(-(m+n+1)) dx dy

over the chart, v the homogeneous lift.  The total weight exponent m+n+1
combines the m-th power of the metric weight with the reference volume
density of order n+1; with that convention the Gram matrix has an exact
closed form.

Exact route: factor P = L^H diag(mu) L with L unit lower triangular.  The
transformed sections t_i = sum_{j<=i} L[i,j] z_j are orthogonal with

    <t^I, t^I> = I! / ((m+n)! * prod_j mu_j^(I_j + 1)),

and the monomial Gram follows by inverting the (lex-unitriangular)
transition matrix of the expansion of t^I over z^J.  A quadrature route
evaluates the same integral directly and serves as an independent check.

Gram convention: entries[a, b] = <basis_a, basis_b> with the conjugate on
basis_a, so coefficient vectors c satisfy ||sum c_a basis_a||^2 = c^H G c.
"""

from dataclasses import dataclass
from math import lgamma

import numpy as np
from scipy.linalg import solve_triangular

from .errors import AccuracyError, DefinitenessError, InvalidInputError
from .hermitian import hermitize, ldl_unitriangular, mu_vector, validate_hermitian
from .okounkov import lattice_points, section_space_dim
from .quadrature import chart_rule, coarsen, default_scheme

# Basis size guard: this module targets desk scale.
MAX_BASIS = 5000


@dataclass(frozen=True)
class GramMatrix:
    """Hermitian positive definite Gram matrix over the lex-sorted basis."""

    n: int
    m: int
    basis: tuple[tuple[int, ...], ...]
    entries: np.ndarray
    error_estimate: float | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class ChebyshevSection:
    """Monic minimal-norm section for one basis index.

    ``coeffs[a]`` multiplies the a-th lex basis monomial; the coefficient at
    the section's own index is exactly 1 and all lex-smaller coefficients
    are exactly 0.
    """

    index: tuple[int, ...]
    coeffs: np.ndarray
    norm_sq: float


def log_section_norm(matrix, index) -> float:
    """log of the closed-form squared norm of the transformed monomial t^I.

    Evaluated with log-gamma so that degrees up to several hundred stay in
    range.
    """
    p = validate_hermitian(matrix)
    exponents = np.asarray(index, dtype=int)
    if exponents.ndim != 1 or exponents.size != p.shape[0]:
        raise InvalidInputError(
            f"multi-index length {exponents.size} does not match order {p.shape[0]}"
        )
    if np.any(exponents < 0):
        raise InvalidInputError("multi-index entries must be nonnegative")
    m = int(exponents.sum())
    n = p.shape[0] - 1
    if m < 1:
        raise InvalidInputError("multi-index degree must be at least 1")
    mu = mu_vector(p)
    log_fact = float(sum(lgamma(e + 1) for e in exponents))
    return log_fact - lgamma(m + n + 1) - float((exponents + 1) @ np.log(mu))


def section_norm_closed_form(matrix, index) -> float:
    """Closed-form squared norm I! / ((m+n)! prod_j mu_j^(I_j+1))."""
    return float(np.exp(log_section_norm(matrix, index)))


def _transition_matrix(lower, basis, position) -> np.ndarray:
    """Expansion of the products t^I over the monomial basis.

    Row a holds the coefficients of prod_i (sum_{j<=i} L[i,j] z_j)^(I_i)
    where I = basis[a].  Every generated index is lex >= I, so the matrix is
    upper unitriangular in the lex order.
    """
    order = lower.shape[0]
    dim = len(basis)
    t = np.zeros((dim, dim), dtype=complex)
    zero = (0,) * order
    for a, idx in enumerate(basis):
        poly = {zero: 1.0 + 0.0j}
        for i, power in enumerate(idx):
            for _ in range(power):
                grown: dict[tuple[int, ...], complex] = {}
                for mono, coeff in poly.items():
                    for j in range(i + 1):
                        lij = lower[i, j]
                        if lij == 0:
                            continue
                        key = mono[:j] + (mono[j] + 1,) + mono[j + 1 :]
                        grown[key] = grown.get(key, 0.0) + coeff * lij
                poly = grown
        for mono, coeff in poly.items():
            t[a, position[mono]] = coeff
    return t


def gram_exact(matrix, m: int) -> GramMatrix:
    """Closed-form Gram matrix of the degree-m monomial basis.

    Assembled as conj(T^{-1}) diag(norms) (T^{-1})^T where T is the
    transition matrix to the orthogonal transformed-monomial basis and the
    norms are the closed-form diagonal.  Exact up to floating point.
    """
    p = validate_hermitian(matrix)
    n = p.shape[0] - 1
    if n < 1:
        raise InvalidInputError("matrix order must be at least 2")
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise InvalidInputError(f"level m must be a positive integer, got {m}")
    if section_space_dim(n, m) > MAX_BASIS:
        raise InvalidInputError(
            f"basis size {section_space_dim(n, m)} exceeds the desk-scale cap {MAX_BASIS}"
        )
    basis = lattice_points(n, m)
    position = {idx: a for a, idx in enumerate(basis)}
    lower, mu = ldl_unitriangular(p)

    log_norms = np.array(
        [
            sum(lgamma(e + 1) for e in idx)
            - lgamma(m + n + 1)
            - float((np.asarray(idx) + 1) @ np.log(mu))
            for idx in basis
        ]
    )
    norms = np.exp(log_norms)

    transition = _transition_matrix(lower, basis, position)
    inverse = solve_triangular(transition, np.eye(len(basis), dtype=complex), lower=False)
    entries = hermitize((inverse.conj() * norms) @ inverse.T)
    return GramMatrix(n=n, m=m, basis=tuple(basis), entries=entries)


def gram_numeric(matrix, m: int, scheme=None) -> GramMatrix:
    """Quadrature evaluation of the same Gram integral, with error estimate.

    The reported estimate is the entrywise gap to a half-resolution run,
    inflated by a safety factor of 10 plus a small floor.  Deterministic
    for a fixed scheme.  Supports n <= 2.

    Raises AccuracyError when the scheme declares a target tolerance and
    the estimate exceeds it.
    """
    p = validate_hermitian(matrix)
    n = p.shape[0] - 1
    if n < 1 or n > 2:
        raise InvalidInputError("quadrature Gram supports n in {1, 2} only")
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise InvalidInputError(f"level m must be a positive integer, got {m}")
    if scheme is None:
        scheme = default_scheme(n)
    basis = lattice_points(n, m)

    fine = _gram_quadrature(p, m, basis, scheme)
    rough = _gram_quadrature(p, m, basis, coarsen(scheme))
    raw_gap = float(np.abs(fine - rough).max())
    estimate = 10.0 * raw_gap + 1e-13 * max(1.0, float(np.abs(fine).max()))
    if scheme.tol is not None and estimate > scheme.tol:
        raise AccuracyError(
            f"quadrature error estimate {estimate:.3e} exceeds tolerance {scheme.tol:.3e}"
        )
    return GramMatrix(
        n=n, m=m, basis=tuple(basis), entries=hermitize(fine), error_estimate=estimate
    )


def _gram_quadrature(p, m, basis, scheme) -> np.ndarray:
    n = p.shape[0] - 1
    points, weights = chart_rule(n, scheme)
    lifted = np.concatenate(
        [points, np.ones((points.shape[0], 1), dtype=complex)], axis=1
    )
    form = np.einsum("ka,ab,kb->k", lifted.conj(), p, lifted).real
    if np.any(form <= 0.0):
        raise DefinitenessError("quadratic form lost positivity on the grid")
    density = weights * form ** (-(m + n + 1)) / np.pi**n

    vander = np.empty((len(basis), points.shape[0]), dtype=complex)
    for a, idx in enumerate(basis):
        mono = np.ones(points.shape[0], dtype=complex)
        for j in range(n):
            if idx[j]:
                mono = mono * points[:, j] ** idx[j]
        vander[a] = mono
    return (vander.conj() * density) @ vander.T


def chebyshev_norms(gram: GramMatrix) -> np.ndarray:
    """Squared norms of the monic lex-orthogonal sections, in basis order.

    These are the pivots of the trailing-direction unit triangular
    factorization of the Gram matrix: eliminating lex-later monomials from
    each section minimizes its norm, and the minimum value is the ratio of
    consecutive trailing minors.
    """
    _, pivots = ldl_unitriangular(gram.entries)
    return pivots


def chebyshev_section_coeffs(gram: GramMatrix, index) -> ChebyshevSection:
    """Monic minimal-norm section with leading monomial at ``index``.

    The section is 1 * z^I plus a combination of lex-larger monomials that
    minimizes the Gram norm; it is orthogonal to every section at a
    different index.
    """
    idx = tuple(int(v) for v in index)
    try:
        a = gram.basis.index(idx)
    except ValueError as exc:
        raise InvalidInputError(f"index {idx} is not in the Gram basis") from exc
    block = gram.entries[a:, a:]
    unit = np.zeros(block.shape[0], dtype=complex)
    unit[0] = 1.0
    solved = np.linalg.solve(block, unit)
    lead = solved[0].real
    if lead <= 0.0:
        raise DefinitenessError("Gram matrix is not positive definite at this index")
    coeffs = np.zeros(gram.dim, dtype=complex)
    coeffs[a:] = solved / solved[0]
    coeffs[a] = 1.0
    return ChebyshevSection(index=idx, coeffs=coeffs, norm_sq=1.0 / lead)
