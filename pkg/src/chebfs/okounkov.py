"""Lattice combinatorics of the exponent simplex.

Degree-m monomials ``z0**I0 * ... * z_{n-1}**I_{n-1}`` on the standard
n-dimensional affine chart, homogenized with the trailing exponent
``I_n = m - sum(I_j)``, are indexed by the lattice points of the m-dilated
unit simplex.  The lexicographic order on the *first n* exponents fixes the
basis order used by every other module; the trailing exponent is determined
by the degree and never enters comparisons.
"""

from math import comb

import numpy as np

from .errors import DomainError, InvalidInputError


def lattice_points(n: int, m: int) -> list[tuple[int, ...]]:
    """Enumerate all exponent tuples of total degree m, lex-sorted.

    Parameters
    ----------
    n : int
        Chart dimension (number of free exponents), n >= 1.
    m : int
        Total degree, m >= 1.

    Returns
    -------
    list of tuple
        All ``(I0, ..., In)`` with nonnegative entries summing to m, sorted
        lexicographically on the first n entries.  The list has exactly
        ``comb(m + n, n)`` elements.
    """
    if n < 1 or m < 1:
        raise InvalidInputError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    points: list[tuple[int, ...]] = []

    def extend(prefix: tuple[int, ...], remaining: int) -> None:
        if len(prefix) == n:
            points.append(prefix + (remaining,))
            return
        for k in range(remaining + 1):
            extend(prefix + (k,), remaining - k)

    extend((), m)
    return points


def lex_compare(left, right) -> int:
    """Compare two exponent tuples of equal degree by their first n entries.

    Returns -1, 0 or +1.  The first differing coordinate decides; the
    trailing (degree-completing) coordinate is ignored.
    """
    left = tuple(int(v) for v in left)
    right = tuple(int(v) for v in right)
    if len(left) != len(right):
        raise InvalidInputError(
            f"multi-index sizes differ: {len(left)} vs {len(right)}"
        )
    if sum(left) != sum(right):
        raise InvalidInputError(
            f"multi-index degrees differ: {sum(left)} vs {sum(right)}"
        )
    head = len(left) - 1
    for a, b in zip(left[:head], right[:head]):
        if a != b:
            return -1 if a < b else 1
    return 0


def section_space_dim(n: int, m: int) -> int:
    """Number of degree-m monomials in n+1 variables, ``comb(m + n, n)``."""
    if n < 1 or m < 1:
        raise InvalidInputError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    return comb(m + n, n)


def simplex_interior_contains(alpha, eps: float = 1e-6) -> bool:
    """Whether alpha sits at least eps inside the open unit simplex.

    True iff every coordinate is >= eps and the coordinate sum is
    <= 1 - eps.
    """
    a = np.asarray(alpha, dtype=float)
    if a.ndim != 1 or a.size < 1:
        raise InvalidInputError("alpha must be a nonempty 1-d real vector")
    return bool(np.all(a >= eps) and float(a.sum()) <= 1.0 - eps)


def require_closed_simplex(alpha, tol: float = 1e-12) -> np.ndarray:
    """Validate alpha against the closed unit simplex, clipping roundoff.

    Coordinates within tol below zero are snapped to zero and a sum within
    tol above one is accepted; anything farther out raises DomainError.
    Returns the clipped coordinate vector.
    """
    a = np.asarray(alpha, dtype=float)
    if a.ndim == 0:
        a = a.reshape(1)
    if a.ndim != 1 or a.size < 1 or not np.all(np.isfinite(a)):
        raise InvalidInputError("alpha must be a finite 1-d real vector")
    if np.any(a < -tol) or float(a.sum()) > 1.0 + tol:
        raise DomainError(f"point {a.tolist()} is outside the closed simplex")
    return np.clip(a, 0.0, None)
