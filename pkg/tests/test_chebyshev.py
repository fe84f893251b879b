from math import lgamma, log

import numpy as np
import pytest
from conftest import random_hermitian_pd, random_lower_positive

from chebfs import (
    ChebyshevPotential,
    DomainError,
    GeodesicPath,
    InvalidInputError,
    affine_in_t_test,
    cheb_closed_form,
    cheb_finite_m,
    convergence_report,
    convexity_sample_check,
    counterexample_path,
    mu_vector,
    path_eval,
    round_to_lattice,
    toric_legendre_check,
)


def entropy(weights):
    w = np.asarray(weights, dtype=float)
    positive = w > 0
    return float(np.sum(w[positive] * np.log(w[positive])))


class TestClosedForm:
    def test_identity_symmetric_point(self):
        pot = ChebyshevPotential.from_matrix(np.eye(2))
        assert cheb_closed_form(pot, [0.5]) == pytest.approx(-log(2.0), abs=1e-14)

    def test_diag_3_5_7(self):
        pot = ChebyshevPotential(mu=np.array([3.0, 5.0, 7.0]))
        expected = 0.2 * log(0.2 / 3) + 0.3 * log(0.3 / 5) + 0.5 * log(0.5 / 7)
        assert cheb_closed_form(pot, [0.2, 0.3]) == pytest.approx(expected, abs=1e-12)

    def test_counterexample_curve_structure(self):
        # substituting mu = (1/cosh t, cosh t) gives
        # c(alpha, t) = entropy(alpha) + (2 alpha - 1) log cosh t
        path = counterexample_path()
        for t in (0.0, 0.7, 1.0, 2.0):
            pot = ChebyshevPotential.from_matrix(path_eval(path, t))
            for alpha in (0.1, 0.25, 0.5, 0.9):
                expected = entropy([alpha, 1 - alpha]) + (2 * alpha - 1) * np.log(
                    np.cosh(t)
                )
                assert cheb_closed_form(pot, [alpha]) == pytest.approx(
                    expected, abs=1e-12
                )

    def test_constant_in_t_at_half(self):
        path = counterexample_path()
        values = [
            cheb_closed_form(
                ChebyshevPotential.from_matrix(path_eval(path, t)), [0.5]
            )
            for t in np.linspace(0, 2, 7)
        ]
        np.testing.assert_allclose(values, -log(2.0), atol=1e-12)

    def test_boundary_zero_log_zero(self):
        pot = ChebyshevPotential(mu=np.array([2.0, 3.0, 5.0]))
        value = cheb_closed_form(pot, [0.0, 0.4])
        expected = 0.4 * log(0.4 / 3) + 0.6 * log(0.6 / 5)
        assert value == pytest.approx(expected, abs=1e-12)
        # vertex: all entropy terms vanish
        assert cheb_closed_form(pot, [1.0, 0.0]) == pytest.approx(-log(2.0))

    def test_outside_simplex_raises(self):
        pot = ChebyshevPotential(mu=np.array([1.0, 1.0]))
        with pytest.raises(DomainError):
            cheb_closed_form(pot, [1.5])
        with pytest.raises(DomainError):
            cheb_closed_form(pot, [-0.2])

    def test_scalar_shift_law(self, rng):
        p = random_hermitian_pd(rng, 3)
        alpha = [0.3, 0.25]
        base = cheb_closed_form(ChebyshevPotential.from_matrix(p), alpha)
        for c in (0.5, 2.0, np.e):
            shifted = cheb_closed_form(ChebyshevPotential.from_matrix(c * p), alpha)
            assert shifted == pytest.approx(base - log(c), abs=1e-12)

    def test_linear_in_log_mu(self, rng):
        p = random_hermitian_pd(rng, 3)
        mu = mu_vector(p)
        pot = ChebyshevPotential.from_matrix(p)
        for _ in range(20):
            alpha = rng.dirichlet(np.ones(3))[:2]
            weights = np.concatenate([alpha, [1 - alpha.sum()]])
            expected = entropy(weights) - float(weights @ np.log(mu))
            assert cheb_closed_form(pot, alpha) == pytest.approx(expected, abs=1e-12)

    def test_unitriangular_invariance(self, rng):
        p = random_hermitian_pd(rng, 3)
        unit = random_lower_positive(rng, 3)
        np.fill_diagonal(unit, 1.0)
        q = unit.conj().T @ p @ unit
        alpha = [0.2, 0.35]
        assert cheb_closed_form(
            ChebyshevPotential.from_matrix(q), alpha
        ) == pytest.approx(
            cheb_closed_form(ChebyshevPotential.from_matrix(p), alpha), abs=1e-10
        )


class TestRoundToLattice:
    def test_exact_point(self):
        assert round_to_lattice([0.5], 10, 1) == (5, 5)

    def test_generic_rounding(self):
        assert round_to_lattice([0.26], 10, 1) == (3, 7)
        assert round_to_lattice([0.24], 10, 1) == (2, 8)

    def test_tie_goes_to_lex_larger(self):
        # 10 * 0.25 = 2.5 is equidistant from (2, 8) and (3, 7)
        assert round_to_lattice([0.25], 10, 1) == (3, 7)

    def test_sum_constrained_rounding(self):
        # both coordinates round up individually but the sum caps at m
        index = round_to_lattice([0.55, 0.45], 10, 2)
        assert sum(index) == 10
        assert min(index) >= 0

    def test_outside_simplex_raises(self):
        with pytest.raises(DomainError):
            round_to_lattice([1.3], 10, 1)


class TestFiniteLevel:
    def test_identity_m2(self):
        assert cheb_finite_m(np.eye(2), 2, [0.5]) == pytest.approx(
            -0.5 * log(6.0), abs=1e-12
        )

    def test_identity_m40_log_factorial_oracle(self):
        # (1/40) log((20!)^2 / 41!) evaluated with lgamma
        oracle = (2 * lgamma(21) - lgamma(42)) / 40
        assert oracle == pytest.approx(-0.7340744714988681, abs=1e-12)
        assert cheb_finite_m(np.eye(2), 40, [0.5]) == pytest.approx(oracle, abs=1e-12)

    def test_converges_to_closed_form(self, rng):
        p = random_hermitian_pd(rng, 2)
        pot = ChebyshevPotential.from_matrix(p)
        limit = cheb_closed_form(pot, [0.5])
        defects = [abs(cheb_finite_m(p, m, [0.5]) - limit) for m in (20, 80, 320)]
        assert defects[0] > defects[1] > defects[2]
        assert defects[2] < 0.02


class TestConvergenceReport:
    def test_identity_defects_strictly_decreasing(self):
        report = convergence_report(np.eye(2), [0.5], [10, 20, 40, 80])
        defects = [row[2] for row in report.rows]
        assert all(a > b for a, b in zip(defects, defects[1:]))
        assert all(report.within_rate)

    def test_identity_rate_constant_at_most_two(self):
        report = convergence_report(np.eye(2), [0.5], [10, 20, 40, 80])
        for m, _, defect in report.rows:
            assert defect * m / log(m) <= 2.0

    def test_diag_limit_matches(self):
        p = np.diag([2.0, 1.0])
        report = convergence_report(p, [0.5], [10, 20, 40, 80])
        pot = ChebyshevPotential(mu=np.array([2.0, 1.0]))
        assert report.limit == pytest.approx(cheb_closed_form(pot, [0.5]))
        final_defect = report.rows[-1][2]
        assert abs(report.rows[-1][1] - report.limit) <= final_defect + 1e-15

    def test_requires_increasing_levels(self):
        with pytest.raises(InvalidInputError):
            convergence_report(np.eye(2), [0.5], [10, 10, 20])


class TestAffineInT:
    def test_triangular_paths_are_affine(self, rng):
        for _ in range(10):
            lower = random_lower_positive(rng, 3)
            path = GeodesicPath(a=lower, d=rng.uniform(-2, 2, 3))
            alphas = [rng.dirichlet(np.ones(3))[:2] for _ in range(3)]
            verdict = affine_in_t_test(path, alphas, [0.0, 0.5, 1.0, 1.5], 1e-6)
            assert verdict.affine
            assert verdict.defects.max() <= 1e-9

    def test_counterexample_defect_value(self):
        verdict = affine_in_t_test(counterexample_path(), [[0.25]], [0, 1, 2], 1e-6)
        # oracle: |(2*0.25 - 1)| * (log cosh 2 - 2 log cosh 1)
        expected = 0.5 * (np.log(np.cosh(2.0)) - 2 * np.log(np.cosh(1.0)))
        assert not verdict.affine
        assert verdict.defects[0] == pytest.approx(expected, rel=1e-10)
        assert verdict.defects[0] == pytest.approx(0.2287205431959051, abs=1e-12)

    def test_constant_path_defect_zero(self, rng):
        p = random_hermitian_pd(rng, 2)
        path = GeodesicPath(a=np.linalg.cholesky(p).conj().T, d=np.zeros(2))
        verdict = affine_in_t_test(path, [[0.3]], [0, 1, 2], 1e-6)
        assert verdict.affine
        assert verdict.defects[0] <= 1e-14

    def test_equivalence_with_log_mu_affineness(self):
        # non-affine log mu shows up as non-affine curves except where the
        # log mu coefficients cancel (alpha = 1/2 on the cosh/sinh path)
        path = counterexample_path()
        verdict = affine_in_t_test(path, [[0.5]], [0, 1, 2], 1e-6)
        assert verdict.affine  # single cancelling alpha
        verdict = affine_in_t_test(path, [[0.5], [0.25]], [0, 1, 2], 1e-6)
        assert not verdict.affine  # any non-cancelling alpha breaks it

    def test_rejects_nonuniform_times(self):
        with pytest.raises(InvalidInputError):
            affine_in_t_test(counterexample_path(), [[0.25]], [0, 1, 3], 1e-6)


class TestConvexity:
    def test_identity_negative_entropy(self):
        pot = ChebyshevPotential(mu=np.ones(2))
        result = convexity_sample_check(pot, trials=1000, seed=7)
        assert result.ok
        assert result.worst_slack <= 1e-12

    def test_random_matrix(self, rng):
        pot = ChebyshevPotential.from_matrix(random_hermitian_pd(rng, 3))
        result = convexity_sample_check(pot, trials=1000, seed=11)
        assert result.ok

    def test_strictness_off_the_diagonal(self):
        pot = ChebyshevPotential(mu=np.ones(2))
        a, b = np.array([0.2]), np.array([0.7])
        lhs = cheb_closed_form(pot, 0.5 * a + 0.5 * b)
        rhs = 0.5 * cheb_closed_form(pot, a) + 0.5 * cheb_closed_form(pot, b)
        assert lhs < rhs - 1e-6  # strictly convex entropy part
        assert cheb_closed_form(pot, a) == pytest.approx(
            0.5 * cheb_closed_form(pot, a) + 0.5 * cheb_closed_form(pot, a)
        )


class TestToricLegendre:
    def test_identity_diagonal(self):
        check = toric_legendre_check([1.0, 1.0], [0.5])
        assert check.closed_form == pytest.approx(-log(2.0), abs=1e-12)
        assert check.legendre == pytest.approx(-log(2.0), abs=1e-9)
        assert check.gap <= 1e-9

    def test_two_one_at_third(self):
        # stationary-point algebra: (1/3) log(1/6) + (2/3) log(2/3)
        expected = (1 / 3) * log(1 / 6) + (2 / 3) * log(2 / 3)
        check = toric_legendre_check([2.0, 1.0], [1 / 3])
        assert check.closed_form == pytest.approx(expected, abs=1e-12)
        assert check.gap <= 1e-8

    def test_three_five_seven(self):
        check = toric_legendre_check([3.0, 5.0, 7.0], [0.2, 0.3])
        assert check.gap <= 1e-6

    def test_random_diagonals(self, rng):
        for _ in range(5):
            d = np.exp(rng.uniform(-1, 1, 3))
            alpha = rng.dirichlet(np.ones(3))[:2]
            if not (np.all(alpha > 0.05) and alpha.sum() < 0.95):
                continue
            assert toric_legendre_check(d, alpha).gap <= 1e-6

    def test_boundary_alpha_rejected(self):
        with pytest.raises(DomainError):
            toric_legendre_check([1.0, 1.0], [0.0])
