"""The convex transform of a matrix potential on the exponent simplex.

For a positive definite P of order n+1 the transform has the closed form

    c(alpha) = sum_{i<n} alpha_i log(alpha_i / mu_i)
               + (1 - sum alpha) log((1 - sum alpha) / mu_n),

a relative entropy against the trailing-minor ratios mu(P).  It is the
m -> infinity limit of (1/m) log of the squared minimal section norms at the
lattice point nearest to m*alpha, with defect O(log m / m).  This module
provides the closed form, the finite-m approximants, the convergence audit,
the affine-in-t classification along matrix paths, a convexity sampler, and
the consistency check against the convex conjugate in the diagonal (torus
invariant) case.
"""

from dataclasses import dataclass
from itertools import product
from math import log

import numpy as np
from scipy.optimize import minimize
from scipy.special import logsumexp

from .errors import AccuracyError, DomainError, InvalidInputError
from .gram import log_section_norm
from .hermitian import GeodesicPath, mu_vector, path_eval, validate_hermitian
from .okounkov import require_closed_simplex, simplex_interior_contains

# Convexity slack allowed for pure roundoff in the sampling check.
CONVEXITY_SLACK = 1e-12


@dataclass(frozen=True)
class ChebyshevPotential:
    """Closed-form transform data: the positive vector mu(P)."""

    mu: np.ndarray

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=float)
        if mu.ndim != 1 or mu.size < 2 or np.any(mu <= 0) or not np.all(np.isfinite(mu)):
            raise InvalidInputError("mu must be a positive vector of length >= 2")
        object.__setattr__(self, "mu", mu)

    @classmethod
    def from_matrix(cls, matrix) -> "ChebyshevPotential":
        return cls(mu=mu_vector(matrix))

    @property
    def n(self) -> int:
        return self.mu.size - 1


def cheb_closed_form(pot: ChebyshevPotential, alpha) -> float:
    """Evaluate the closed-form transform on the closed simplex.

    ``alpha`` holds the n free coordinates; the last barycentric weight is
    1 - sum(alpha).  Boundary points use the convention 0*log(0) = 0, which
    extends the interior formula continuously.
    """
    a = require_closed_simplex(alpha)
    if a.size != pot.n:
        raise InvalidInputError(
            f"alpha has {a.size} coordinates, expected {pot.n}"
        )
    weights = np.concatenate([a, [max(0.0, 1.0 - float(a.sum()))]])
    positive = weights > 0.0
    entropy = float(np.sum(weights[positive] * np.log(weights[positive])))
    return entropy - float(weights @ np.log(pot.mu))


def round_to_lattice(alpha, m: int, n: int) -> tuple[int, ...]:
    """Nearest degree-m lattice point to m*alpha in l1 distance.

    Ties between equally near lattice points resolve to the
    lexicographically larger one.  Raises DomainError when alpha is outside
    the closed simplex (no nearby lattice point to round to).
    """
    a = require_closed_simplex(alpha, tol=1e-9)
    if a.size != n:
        raise InvalidInputError(f"alpha has {a.size} coordinates, expected {n}")
    target = m * a
    ranges = []
    for tj in target:
        lo = max(0, int(np.floor(tj)) - 2)
        hi = min(m, int(np.ceil(tj)) + 2)
        ranges.append(range(lo, hi + 1))
    best: tuple[int, ...] | None = None
    best_dist = np.inf
    for head in product(*ranges):
        tail = m - sum(head)
        if tail < 0:
            continue
        full = head + (tail,)
        dist = float(np.abs(np.asarray(full) - np.concatenate([target, [m - target.sum()]])).sum())
        if dist < best_dist - 1e-12 or (
            abs(dist - best_dist) <= 1e-12 and (best is None or full > best)
        ):
            best, best_dist = full, min(dist, best_dist)
    if best is None:
        raise DomainError(f"no degree-{m} lattice point near {np.asarray(alpha).tolist()}")
    return best


def cheb_finite_m(matrix, m: int, alpha) -> float:
    """Level-m approximant: (1/m) log of the squared section norm.

    The norm is taken at the degree-m lattice point nearest to m*alpha and
    evaluated through the closed form (log-gamma arithmetic), so levels up
    to a few hundred are exact to roundoff.
    """
    p = validate_hermitian(matrix)
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise InvalidInputError(f"level m must be a positive integer, got {m}")
    index = round_to_lattice(alpha, int(m), p.shape[0] - 1)
    return log_section_norm(p, index) / float(m)


@dataclass(frozen=True)
class ConvergenceReport:
    """Finite-level values against the closed form, with the rate audit.

    ``rows`` holds (m, value, defect) triples.  ``rate_constant`` is fitted
    as max of defect * m / log(m) over the two largest levels, and
    ``within_rate[i]`` records whether row i obeys
    defect <= rate_constant * log(m)/m.
    """

    rows: tuple[tuple[int, float, float], ...]
    limit: float
    rate_constant: float
    within_rate: tuple[bool, ...]


def convergence_report(matrix, alpha, ms) -> ConvergenceReport:
    """Tabulate |finite-m value - closed form| over increasing levels."""
    levels = [int(m) for m in ms]
    if len(levels) < 2 or any(b <= a for a, b in zip(levels, levels[1:])):
        raise InvalidInputError("levels must be strictly increasing, at least two")
    pot = ChebyshevPotential.from_matrix(matrix)
    limit = cheb_closed_form(pot, alpha)
    rows = []
    for m in levels:
        value = cheb_finite_m(matrix, m, alpha)
        rows.append((m, value, abs(value - limit)))
    fitted = max(defect * m / log(m) for m, _, defect in rows[-2:])
    flags = tuple(
        defect <= fitted * log(m) / m * (1.0 + 1e-12) for m, _, defect in rows
    )
    return ConvergenceReport(
        rows=tuple(rows), limit=limit, rate_constant=fitted, within_rate=flags
    )


@dataclass(frozen=True)
class AffineCurveTest:
    """Verdict of the affineness test of t -> c(alpha, t) along a path."""

    affine: bool
    defects: np.ndarray
    tol: float


def affine_in_t_test(
    path: GeodesicPath, alphas, ts, tol: float = 1e-6
) -> AffineCurveTest:
    """Second-difference test of t -> c(alpha, P(t)) for each alpha.

    ``ts`` must be at least three equally spaced times.  The defect per
    alpha is the largest |f(t) - 2f(t+h) + f(t+2h)| / h^2 over consecutive
    triples; the curve family is declared affine when all defects are
    within tol.
    """
    times = np.asarray(ts, dtype=float)
    if times.size < 3:
        raise InvalidInputError("need at least 3 sample times")
    steps = np.diff(times)
    if np.any(steps <= 0) or np.abs(steps - steps[0]).max() > 1e-9 * abs(steps[0]):
        raise InvalidInputError("sample times must be strictly increasing, equispaced")
    if tol <= 0:
        raise InvalidInputError("tolerance must be positive")
    h = float(steps[0])
    pots = [ChebyshevPotential.from_matrix(path_eval(path, t)) for t in times]
    alphas = [np.atleast_1d(np.asarray(a, dtype=float)) for a in alphas]
    defects = np.empty(len(alphas))
    for k, alpha in enumerate(alphas):
        values = np.array([cheb_closed_form(pot, alpha) for pot in pots])
        second = values[:-2] - 2.0 * values[1:-1] + values[2:]
        defects[k] = float(np.abs(second).max()) / h**2
    return AffineCurveTest(affine=bool(defects.max() <= tol), defects=defects, tol=tol)


@dataclass(frozen=True)
class ConvexityCheck:
    """Result of randomized midpoint convexity sampling."""

    ok: bool
    worst_slack: float
    trials: int


def convexity_sample_check(
    pot: ChebyshevPotential, trials: int, seed: int
) -> ConvexityCheck:
    """Sample random interior segments and verify the convexity inequality.

    For interior alpha, beta and lambda in (0, 1) checks
    c(lambda*alpha + (1-lambda)*beta) <= lambda*c(alpha) +
    (1-lambda)*c(beta) + slack, reporting the worst violation found.
    """
    if trials < 1:
        raise InvalidInputError("need at least one trial")
    rng = np.random.default_rng(seed)
    worst = -np.inf
    for _ in range(trials):
        alpha = rng.dirichlet(np.ones(pot.n + 1))[: pot.n]
        beta = rng.dirichlet(np.ones(pot.n + 1))[: pot.n]
        lam = rng.uniform(0.05, 0.95)
        mid = lam * alpha + (1.0 - lam) * beta
        slack = cheb_closed_form(pot, mid) - (
            lam * cheb_closed_form(pot, alpha)
            + (1.0 - lam) * cheb_closed_form(pot, beta)
        )
        worst = max(worst, slack)
    return ConvexityCheck(ok=worst <= CONVEXITY_SLACK, worst_slack=worst, trials=trials)


@dataclass(frozen=True)
class LegendreCheck:
    """Closed form against the numerically maximized convex conjugate."""

    closed_form: float
    legendre: float
    gap: float


def toric_legendre_check(diag, alpha) -> LegendreCheck:
    """Diagonal-case consistency: the transform as a convex conjugate.

    For P = diag(d) the transform at interior alpha equals

        sup over y in R^n of  <alpha, y> - log(d_n + sum_j d_j exp(y_j)),

    the conjugate of the potential restricted to torus orbits.  The sup is
    found by BFGS with an analytic gradient; failure to drive the gradient
    below 1e-10 raises AccuracyError.
    """
    d = np.asarray(diag, dtype=float)
    if d.ndim != 1 or d.size < 2 or np.any(d <= 0):
        raise InvalidInputError("need a positive diagonal vector of length >= 2")
    n = d.size - 1
    a = np.atleast_1d(np.asarray(alpha, dtype=float))
    if not simplex_interior_contains(a, eps=1e-12):
        raise DomainError("alpha must be interior for the conjugate to be attained")
    if a.size != n:
        raise InvalidInputError(f"alpha has {a.size} coordinates, expected {n}")

    log_d = np.log(d)

    def objective(y):
        stacked = np.concatenate([log_d[:n] + y, [log_d[n]]])
        g = logsumexp(stacked)
        prob = np.exp(stacked[:n] - g)
        return g - float(a @ y), prob - a

    result = minimize(
        objective,
        x0=np.zeros(n),
        jac=True,
        method="BFGS",
        options={"gtol": 1e-12, "maxiter": 500},
    )
    _, grad = objective(result.x)
    if float(np.abs(grad).max()) > 1e-10:
        raise AccuracyError("conjugate maximization did not converge")
    legendre = -float(result.fun)
    closed = cheb_closed_form(ChebyshevPotential(mu=d), a)
    return LegendreCheck(closed_form=closed, legendre=legendre, gap=abs(legendre - closed))
