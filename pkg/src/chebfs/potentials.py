"""Potentials log(z^H P z) on the standard affine chart and paths between them.

A positive definite Hermitian matrix P of order n+1 defines the metric
potential phi_P(z) = log(v^H P v) where v = (z_0, ..., z_{n-1}, 1) is the
homogeneous lift of a chart point.  Paths of the form P(t) = A^H exp(tD) A
interpolate endpoint potentials; they are the geodesic segments of this
finite-dimensional family.
"""

import numpy as np

from .errors import DefinitenessError, InvalidInputError
from .hermitian import (
    GeodesicPath,
    simultaneous_diagonalize,
    validate_hermitian,
)


def lift(z, order: int) -> np.ndarray:
    """Append the homogenizing 1 to a chart point of length order - 1."""
    v = np.atleast_1d(np.asarray(z, dtype=complex))
    if v.ndim != 1 or v.size != order - 1:
        raise InvalidInputError(
            f"chart point must have {order - 1} coordinates, got shape {v.shape}"
        )
    if not np.all(np.isfinite(v.view(float))):
        raise InvalidInputError("chart point coordinates must be finite")
    return np.concatenate([v, [1.0 + 0.0j]])


def fs_eval(matrix, z) -> float:
    """Evaluate the potential log(v^H P v) at a chart point.

    Raises DefinitenessError if the quadratic form fails to be positive,
    which cannot happen for positive definite P.
    """
    p = validate_hermitian(matrix)
    v = lift(z, p.shape[0])
    value = complex(v.conj() @ p @ v)
    if value.real <= 0.0:
        raise DefinitenessError(f"quadratic form is not positive: {value.real:.3e}")
    return float(np.log(value.real))


def geodesic_from_endpoints(p0, p1) -> GeodesicPath:
    """Geodesic path with P(0) = p0 and P(1) = p1, via joint diagonalization."""
    return simultaneous_diagonalize(p0, p1)


def counterexample_path() -> GeodesicPath:
    """The order-2 geodesic P(t) = [[cosh t, sinh t], [sinh t, cosh t]].

    The rotation-by-45-degrees factorization is hardwired:
    A = [[s, s], [-s, s]] with s = sqrt(2)/2 and D = (1, -1).  Along this
    path the trailing-minor ratios are mu = (1/cosh t, cosh t), so their
    logs are not affine in t even though the path is a geodesic.
    """
    s = np.sqrt(2.0) / 2.0
    a = np.array([[s, s], [-s, s]], dtype=complex)
    return GeodesicPath(a=a, d=np.array([1.0, -1.0]))
