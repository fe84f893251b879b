"""Hermitian positive definite matrix algebra organized around trailing minors.

The central invariant of a positive definite Hermitian matrix P here is the
vector of ratios of consecutive *trailing* principal minors,

    mu_i(P) = det P[i:, i:] / det P[i+1:, i+1:],      0 <= i <= n,

the analogue of the i-th eigenvalue adapted to the flag of trailing
coordinate subspaces.  mu equals the diagonal of the unit lower triangular
factorization P = L^H diag(d) L obtained by eliminating from the *last* row
upward, it is invariant under unit lower triangular congruence, and it scales
by |l_ii|^2 under general lower triangular congruence.

The module also provides simultaneous diagonalization of a positive definite
pair, evaluation of matrix paths P(t) = A^H exp(tD) A, and the test of
whether such a path admits a time-independent triangular factorization
P(t) = L^H exp(tK) L.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .errors import (
    DefinitenessError,
    InternalInconsistencyError,
    InvalidInputError,
)

# Elimination pivots at or below PIVOT_RTOL times the largest diagonal entry
# are treated as a definiteness failure (scale invariant, conservative for
# double precision).
PIVOT_RTOL = 1e-12

# Componentwise Hermitian-symmetry tolerance, relative to the largest entry.
HERMITIAN_RTOL = 1e-12


def hermitize(matrix) -> np.ndarray:
    """Return (M + M^H)/2, killing roundoff asymmetry after products."""
    m = np.asarray(matrix, dtype=complex)
    return 0.5 * (m + m.conj().T)


def validate_hermitian(matrix, rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    """Coerce to a square complex ndarray and check Hermitian symmetry.

    Symmetry must hold componentwise to rtol times the largest entry
    magnitude (at least rtol in absolute terms).

    Raises
    ------
    InvalidInputError
        If the input is not square or not Hermitian within tolerance.
    """
    p = np.asarray(matrix, dtype=complex)
    if p.ndim != 2 or p.shape[0] != p.shape[1] or p.shape[0] < 1:
        raise InvalidInputError(f"expected a square matrix, got shape {p.shape}")
    if not np.all(np.isfinite(p.view(float))):
        raise InvalidInputError("matrix entries must be finite")
    scale = max(1.0, float(np.abs(p).max()))
    if np.abs(p - p.conj().T).max() > rtol * scale:
        raise InvalidInputError("matrix is not Hermitian within tolerance")
    return p


def trailing_minor_det(matrix, i: int) -> float:
    """Determinant of the trailing block ``P[i:, i:]`` of a Hermitian matrix.

    ``i`` may range from 0 (full determinant) to the order of the matrix,
    where by convention the empty trailing block has determinant 1.  The
    result of a Hermitian determinant is real; the imaginary roundoff is
    checked to be below 1e-10 of the magnitude and dropped.
    """
    p = validate_hermitian(matrix)
    order = p.shape[0]
    if not isinstance(i, (int, np.integer)) or not 0 <= i <= order:
        raise InvalidInputError(f"trailing index must lie in [0, {order}], got {i}")
    if i == order:
        return 1.0
    det = complex(np.linalg.det(p[i:, i:]))
    if abs(det.imag) > 1e-10 * max(abs(det), 1e-300):
        raise InternalInconsistencyError(
            f"Hermitian determinant came out non-real: {det}"
        )
    return det.real


def ldl_unitriangular(matrix):
    """Factor P = L^H diag(d) L with L unit lower triangular.

    Elimination proceeds from the last row/column upward, so the pivots d
    are exactly the trailing-minor ratios mu_i(P), in order.

    Returns
    -------
    (L, d) : (ndarray, ndarray)
        Unit lower triangular complex L and positive real pivot vector d.

    Raises
    ------
    DefinitenessError
        If some elimination pivot is at or below PIVOT_RTOL times the
        largest diagonal entry.
    """
    p = validate_hermitian(matrix)
    order = p.shape[0]
    floor = PIVOT_RTOL * max(float(np.max(p.real.diagonal())), np.finfo(float).tiny)
    work = p.copy()
    lower = np.eye(order, dtype=complex)
    pivots = np.zeros(order)
    for i in range(order - 1, -1, -1):
        piv = work[i, i].real
        if piv <= floor:
            raise DefinitenessError(
                f"elimination pivot {piv:.3e} at index {i} is not positive"
            )
        pivots[i] = piv
        if i:
            row = work[i, :i] / piv
            lower[i, :i] = row
            work[:i, :i] -= piv * np.outer(row.conj(), row)
    return lower, pivots


def mu_vector(matrix) -> np.ndarray:
    """Trailing-minor ratios mu_i(P) = det P[i:, i:] / det P[i+1:, i+1:].

    Computed as the pivots of the trailing-direction unit triangular
    factorization, which is numerically stabler than forming determinant
    ratios.  All entries are positive and their product equals det P.
    """
    _, pivots = ldl_unitriangular(matrix)
    return pivots


def congruence(matrix, transform) -> np.ndarray:
    """Congruence A^H P A of a Hermitian P by an invertible A.

    The result is re-symmetrized to keep the Hermitian invariant checkable
    under roundoff.
    """
    p = validate_hermitian(matrix)
    a = np.asarray(transform, dtype=complex)
    if a.shape != p.shape:
        raise InvalidInputError(f"size mismatch: P is {p.shape}, A is {a.shape}")
    singular_values = np.linalg.svd(a, compute_uv=False)
    if singular_values[-1] <= 1e-12 * singular_values[0]:
        raise InvalidInputError("congruence transform is numerically singular")
    return hermitize(a.conj().T @ p @ a)


@dataclass(frozen=True)
class GeodesicPath:
    """Matrix path P(t) = A^H exp(tD) A.

    ``a`` is an invertible complex matrix and ``d`` the real diagonal of the
    exponent.  P(0) = A^H A; only P(t) is geometrically meaningful, the pair
    (A, D) is unique only up to symmetry.
    """

    a: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=complex)
        d = np.asarray(self.d, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidInputError(f"path matrix must be square, got {a.shape}")
        if d.shape != (a.shape[0],):
            raise InvalidInputError(
                f"exponent diagonal has length {d.shape}, expected ({a.shape[0]},)"
            )
        singular_values = np.linalg.svd(a, compute_uv=False)
        if singular_values[-1] <= 1e-12 * singular_values[0]:
            raise InvalidInputError("path matrix is numerically singular")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "d", d)

    @property
    def order(self) -> int:
        return self.a.shape[0]


def path_eval(path: GeodesicPath, t: float) -> np.ndarray:
    """Evaluate P(t) = A^H exp(tD) A, Hermitian-symmetrized."""
    scaled = path.a.conj().T * np.exp(t * path.d)
    return hermitize(scaled @ path.a)


def simultaneous_diagonalize(p0, p1) -> GeodesicPath:
    """Find (A, D) with A^H A = P0 and A^H exp(D) A = P1.

    P0 is factored as C^H C by Cholesky, the whitened matrix
    C^{-H} P1 C^{-1} is diagonalized, and D is the log of its eigenvalues,
    sorted descending.  Eigenvector phases are normalized so the first
    significant coordinate is real positive, which makes the output
    deterministic; only the path t -> P(t) is contractual.

    Raises
    ------
    DefinitenessError
        If either matrix fails to be positive definite.
    """
    p0 = validate_hermitian(p0)
    p1 = validate_hermitian(p1)
    if p0.shape != p1.shape:
        raise InvalidInputError(f"order mismatch: {p0.shape} vs {p1.shape}")
    try:
        chol = np.linalg.cholesky(p0)  # p0 = chol @ chol^H
    except np.linalg.LinAlgError as exc:
        raise DefinitenessError("first endpoint is not positive definite") from exc
    half = solve_triangular(chol, p1, lower=True)
    whitened = hermitize(solve_triangular(chol, half.conj().T, lower=True).conj().T)
    eigenvalues, vectors = np.linalg.eigh(whitened)
    if eigenvalues[0] <= PIVOT_RTOL * max(eigenvalues[-1], np.finfo(float).tiny):
        raise DefinitenessError("second endpoint is not positive definite")
    # eigh returns ascending order; flip to descending and fix phases.
    eigenvalues = eigenvalues[::-1]
    vectors = vectors[:, ::-1].copy()
    for col in range(vectors.shape[1]):
        column = vectors[:, col]
        magnitudes = np.abs(column)
        lead = int(np.argmax(magnitudes > 1e-8 * magnitudes.max()))
        phase = column[lead] / abs(column[lead])
        vectors[:, col] = column * phase.conjugate()
    a = (chol @ vectors).conj().T
    return GeodesicPath(a=a, d=np.log(eigenvalues))


def reverse_cholesky(matrix) -> np.ndarray:
    """Lower triangular L with positive real diagonal and P = L^H L.

    The trailing-flag analogue of the Cholesky factorization: L^H L rather
    than L L^H.  Obtained by Cholesky of the index-reversed matrix.
    """
    p = validate_hermitian(matrix)
    flipped = np.ascontiguousarray(p[::-1, ::-1])
    try:
        c = np.linalg.cholesky(flipped)
    except np.linalg.LinAlgError as exc:
        raise DefinitenessError("matrix is not positive definite") from exc
    return np.ascontiguousarray(c.conj().T[::-1, ::-1])


@dataclass(frozen=True)
class TriangularDecomposition:
    """Time-independent factorization data P(t) = L^H exp(tK) L.

    ``l`` is lower triangular with strictly positive real diagonal (which
    pins the factorization uniquely) and ``k`` is the real exponent
    diagonal.
    """

    l: np.ndarray
    k: np.ndarray


@dataclass(frozen=True)
class AffineDecomposition:
    """Outcome of the triangular-path classification of a matrix path.

    ``defects[i]`` is the maximum normalized second difference of
    t -> log mu_i(P(t)) over the sample times.  When every defect is within
    tolerance the path is accepted and ``decomposition`` carries the
    recovered (L, K); otherwise it is None.
    """

    accepted: bool
    defects: np.ndarray
    decomposition: TriangularDecomposition | None
    reconstruction_error: float | None


def _second_difference_defect(ts: np.ndarray, values: np.ndarray) -> float:
    """Max |f''| estimate over consecutive triples via divided differences."""
    worst = 0.0
    for j in range(len(ts) - 2):
        t0, t1, t2 = ts[j], ts[j + 1], ts[j + 2]
        f0, f1, f2 = values[j], values[j + 1], values[j + 2]
        dd = ((f2 - f1) / (t2 - t1) - (f1 - f0) / (t1 - t0)) / (t2 - t0)
        worst = max(worst, abs(2.0 * dd))
    return worst


def affine_mu_decompose(
    path: GeodesicPath, sample_ts, tol: float
) -> AffineDecomposition:
    """Test whether log mu_i(P(t)) is affine and recover P(t) = L^H exp(tK) L.

    Acceptance requires both conditions: every log mu_i must be affine over
    the sample times within ``tol`` (measured as the largest second divided
    difference, normalized so that for a uniform step h it equals
    ``|f(t) - 2 f(t+h) + f(t+2h)| / h**2``), and the decomposition built
    from the endpoints must reproduce P(t) at all sample times to
    ``tol * ||P(t)||_inf``.  L is the trailing Cholesky factor of P(0)
    (positive diagonal, hence unique) and k_i = log mu_i(P(1)) -
    log mu_i(P(0)).

    Raises
    ------
    InvalidInputError
        If fewer than 3 distinct sample times are given or 0 and 1 are
        missing from them.
    DefinitenessError
        If P(t) loses definiteness at a sample time.
    InternalInconsistencyError
        If the affineness test passes but the reconstruction does not;
        this flags numerical breakdown, not a geometric outcome.
    """
    ts = np.unique(np.asarray(sample_ts, dtype=float))
    if ts.size < 3:
        raise InvalidInputError("need at least 3 distinct sample times")
    if not (np.isclose(ts, 0.0, atol=1e-12).any() and np.isclose(ts, 1.0, atol=1e-12).any()):
        raise InvalidInputError("sample times must contain 0 and 1")
    if tol <= 0:
        raise InvalidInputError("tolerance must be positive")

    matrices = [path_eval(path, t) for t in ts]
    log_mus = np.array([np.log(mu_vector(p)) for p in matrices])  # (T, order)
    defects = np.array(
        [_second_difference_defect(ts, log_mus[:, i]) for i in range(path.order)]
    )
    if defects.max() > tol:
        return AffineDecomposition(False, defects, None, None)

    p_start = path_eval(path, 0.0)
    p_end = path_eval(path, 1.0)
    lower = reverse_cholesky(p_start)
    exponents = np.log(mu_vector(p_end)) - np.log(mu_vector(p_start))

    worst = 0.0
    for t, p_t in zip(ts, matrices):
        rebuilt = hermitize((lower.conj().T * np.exp(t * exponents)) @ lower)
        scale = float(np.abs(p_t).max())
        worst = max(worst, float(np.abs(rebuilt - p_t).max()) / scale)
    if worst > tol:
        raise InternalInconsistencyError(
            f"mu-affine path failed reconstruction: residual {worst:.3e} > {tol:.3e}"
        )
    return AffineDecomposition(
        True, defects, TriangularDecomposition(lower, exponents), worst
    )
