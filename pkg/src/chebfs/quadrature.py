"""Deterministic quadrature over the affine chart of projective space.

Integrals here all have the shape  integral over C^n of f(z) dx dy  with f
decaying like |z|^(-2n-2) or faster.  For n = 1 a tensor rule is used:
tanh-sinh nodes in the radial variable composed with r = tan(u), and a
uniform trapezoid rule in the angle (periodic integrand, spectral accuracy).
For n = 2 a scrambled Sobol rule with a fixed seed keeps the evaluation
deterministic at an acceptable node count.
"""

from dataclasses import dataclass, replace

import numpy as np
from scipy.stats import qmc

from .errors import InvalidInputError

# Half-width of the tanh-sinh trapezoid in the double-exponential variable;
# beyond |t| = 3.2 the weights underflow double precision.
_TANH_SINH_CUTOFF = 3.2


@dataclass(frozen=True)
class PolarScheme:
    """Radial x angular tensor rule for n = 1 chart integrals."""

    radial: int = 200
    angular: int = 64
    tol: float | None = None


@dataclass(frozen=True)
class SobolScheme:
    """Scrambled-Sobol rule for n >= 2 chart integrals; fixed seed."""

    samples: int = 1 << 16
    seed: int = 1905
    tol: float | None = None


def tanh_sinh_rule(npoints: int):
    """Symmetric tanh-sinh nodes and weights for an integral over (-1, 1)."""
    half = max(1, npoints // 2)
    h = _TANH_SINH_CUTOFF / half
    t = np.arange(-half, half + 1) * h
    s = 0.5 * np.pi * np.sinh(t)
    nodes = np.tanh(s)
    weights = h * 0.5 * np.pi * np.cosh(t) / np.cosh(s) ** 2
    return nodes, weights


def radial_rule(npoints: int):
    """Nodes r in (0, inf) and weights for integrals of f(r) r dr.

    Substitutes r = tan(u) on u in (0, pi/2) and applies tanh-sinh there;
    the weight already contains the polar-measure factor r and the
    Jacobian dr = (1 + r^2) du.
    """
    x, w = tanh_sinh_rule(npoints)
    u = (x + 1.0) * (np.pi / 4.0)
    r = np.tan(u)
    return r, w * (np.pi / 4.0) * (1.0 + r * r) * r


def chart_rule(n: int, scheme):
    """Points (N, n) complex and weights (N,) approximating integral dx dy.

    sum_k w_k f(z_k) approximates the integral of f over C^n with respect
    to 2n-dimensional Lebesgue measure.
    """
    if isinstance(scheme, PolarScheme):
        if n != 1:
            raise InvalidInputError("the polar tensor rule is for n = 1 only")
        r, wr = radial_rule(scheme.radial)
        k = np.arange(scheme.angular)
        theta = 2.0 * np.pi * k / scheme.angular
        z = np.outer(r, np.exp(1j * theta)).ravel()
        w = np.repeat(wr * (2.0 * np.pi / scheme.angular), scheme.angular)
        return z[:, None], w
    if isinstance(scheme, SobolScheme):
        if n < 1:
            raise InvalidInputError("need n >= 1")
        sampler = qmc.Sobol(d=2 * n, scramble=True, seed=scheme.seed)
        pts = sampler.random(scheme.samples)
        z = np.empty((scheme.samples, n), dtype=complex)
        w = np.full(scheme.samples, 1.0 / scheme.samples)
        for j in range(n):
            u = np.clip(pts[:, 2 * j] * (np.pi / 2.0), 1e-12, np.pi / 2.0 - 1e-9)
            theta = pts[:, 2 * j + 1] * (2.0 * np.pi)
            r = np.tan(u)
            z[:, j] = r * np.exp(1j * theta)
            w *= (np.pi / 2.0) * (1.0 + r * r) * r * (2.0 * np.pi)
        return z, w
    raise InvalidInputError(f"unknown quadrature scheme {scheme!r}")


def coarsen(scheme):
    """Half-resolution version of a scheme, used for error estimates."""
    if isinstance(scheme, PolarScheme):
        return replace(
            scheme, radial=max(8, scheme.radial // 2), angular=max(8, scheme.angular // 2)
        )
    if isinstance(scheme, SobolScheme):
        return replace(scheme, samples=max(64, scheme.samples // 2))
    raise InvalidInputError(f"unknown quadrature scheme {scheme!r}")


def default_scheme(n: int):
    """Preferred scheme per chart dimension."""
    return PolarScheme() if n == 1 else SobolScheme()
