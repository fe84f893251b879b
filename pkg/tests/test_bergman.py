from math import lgamma, log, pi

import numpy as np
import pytest
from conftest import random_hermitian_pd
from scipy.special import gammaln, logsumexp

from chebfs import (
    ChartGrid,
    bergman_exactness_defect,
    bergman_geodesic_eval,
    bergman_spectrum,
    fs_eval,
    fs_hessian,
    hilb_endpoint_gram,
    level_constant,
)
from chebfs.quadrature import PolarScheme, chart_rule


def log_multi_beta(index):
    """log B(I_0 + 1, ..., I_n + 1) = log(I! / (|I| + n)!)."""
    return sum(gammaln(i + 1) for i in index) - gammaln(sum(index) + len(index))


class TestHilbEndpointGram:
    def test_identity_m1_diagonal_pi(self):
        gram = hilb_endpoint_gram(np.eye(2), 1)
        # 2 pi B(2, 1) = pi on both basis monomials, zero off-diagonal
        np.testing.assert_allclose(gram.entries, np.diag([pi, pi]), atol=1e-12)

    def test_identity_closed_form_general(self):
        gram = hilb_endpoint_gram(np.eye(3), 2)
        for a, idx in enumerate(gram.basis):
            expected = (2 * pi) ** 2 * np.exp(log_multi_beta(idx))
            assert gram.entries[a, a].real == pytest.approx(expected, rel=1e-12)
        off = gram.entries - np.diag(np.diag(gram.entries))
        assert np.abs(off).max() <= 1e-12

    def test_exponential_diagonal_change_of_variable(self):
        # diagonal exp(d) endpoints: entries (2 pi) B(I+1) exp(-(I0 - I1) )
        gram = hilb_endpoint_gram(np.diag([np.e, 1 / np.e]), 2)
        for a, idx in enumerate(gram.basis):
            expected = 2 * pi * np.exp(log_multi_beta(idx)) * np.exp(-(idx[0] - idx[1]))
            assert gram.entries[a, a].real == pytest.approx(expected, rel=1e-12)

    def test_against_monge_ampere_quadrature_oracle(self, rng):
        # independent route: integrate conj(z^I) z^J e^{-m phi} against the
        # density det(Hessian) * 2^n of the potential's own volume form
        p = random_hermitian_pd(rng, 2)
        m = 2
        gram = hilb_endpoint_gram(p, m)
        points, weights = chart_rule(1, PolarScheme(200, 64))
        lifted = np.concatenate([points, np.ones((points.shape[0], 1))], axis=1)
        q = np.einsum("ka,ab,kb->k", lifted.conj(), p, lifted).real
        det_h = fs_hessian(p, points)[:, 0, 0].real
        density = weights * q ** (-m) * det_h * 2.0
        vander = np.array(
            [points[:, 0] ** idx[0] for idx in gram.basis], dtype=complex
        )
        oracle = (vander.conj() * density) @ vander.T
        np.testing.assert_allclose(gram.entries, oracle, atol=1e-8)


class TestBergmanSpectrum:
    def test_equal_endpoints_zero_spectrum(self, rng):
        p = random_hermitian_pd(rng, 2)
        spectrum = bergman_spectrum(p, p, 3)
        np.testing.assert_allclose(spectrum.lambdas, 0.0, atol=1e-12)

    def test_diagonal_endpoints_linear_spectrum(self):
        d = np.array([0.8, -0.3])
        spectrum = bergman_spectrum(np.eye(2), np.diag(np.exp(d)), 4)
        expected = sorted(
            (idx[0] * d[0] + idx[1] * d[1] for idx in spectrum.basis), reverse=True
        )
        np.testing.assert_allclose(spectrum.lambdas, expected, atol=1e-12)

    def test_orthonormality_invariants(self, rng):
        p0 = random_hermitian_pd(rng, 2)
        p1 = random_hermitian_pd(rng, 2)
        m = 3
        spectrum = bergman_spectrum(p0, p1, m)
        h0 = hilb_endpoint_gram(p0, m).entries
        h1 = hilb_endpoint_gram(p1, m).entries
        s = spectrum.sections
        gram0 = s.conj() @ h0 @ s.T
        np.testing.assert_allclose(gram0, np.eye(s.shape[0]), atol=1e-9)
        rescale = np.exp(spectrum.lambdas / 2.0)
        gram1 = (s * rescale[:, None]).conj() @ h1 @ (s * rescale[:, None]).T
        np.testing.assert_allclose(gram1, np.eye(s.shape[0]), atol=1e-9)

    def test_swap_symmetry(self, rng):
        p0 = random_hermitian_pd(rng, 2)
        p1 = random_hermitian_pd(rng, 2)
        forward = bergman_spectrum(p0, p1, 2).lambdas
        backward = bergman_spectrum(p1, p0, 2).lambdas
        np.testing.assert_allclose(
            forward, sorted(-backward, reverse=True), atol=1e-10
        )


class TestBergmanEval:
    def test_t_zero_is_first_kernel(self, rng):
        p0 = random_hermitian_pd(rng, 2)
        p1 = random_hermitian_pd(rng, 2)
        m = 4
        spectrum = bergman_spectrum(p0, p1, m)
        z = [0.3 + 0.4j]
        values = spectrum.sections @ np.array(
            [complex(z[0]) ** idx[0] for idx in spectrum.basis]
        )
        expected = logsumexp(2 * np.log(np.abs(values))) / m
        assert bergman_geodesic_eval(spectrum, 0.0, z) == pytest.approx(
            expected, abs=1e-12
        )

    def test_large_time_no_overflow(self):
        spectrum = bergman_spectrum(np.eye(2), np.diag([np.e, 1 / np.e]), 4)
        value = bergman_geodesic_eval(spectrum, 400.0, [1.5])
        assert np.isfinite(value)


class TestDiagonalExactness:
    def test_n1_defect_is_roundoff(self):
        defect = bergman_exactness_defect(np.array([1.0, -1.0]), 8)
        assert defect <= 1e-9

    def test_n2_defect_is_roundoff(self):
        defect = bergman_exactness_defect(np.array([1.0, 0.0, -1.0]), 4)
        assert defect <= 1e-8

    def test_zero_exponent_constant_kernel(self):
        defect = bergman_exactness_defect(np.array([0.0, 0.0]), 6)
        assert defect <= 1e-12

    def test_measured_constant_matches_formula(self):
        d = np.array([1.0, -1.0])
        m = 4
        spectrum = bergman_spectrum(np.eye(2), np.diag(np.exp(d)), m)
        for t, z in [(0.0, [0.5]), (0.5, [1.0 + 1.0j]), (1.0, [-2.0])]:
            measured = bergman_geodesic_eval(spectrum, t, z) - fs_eval(
                np.diag(np.exp(t * d)).astype(complex), z
            )
            assert measured == pytest.approx(level_constant(1, m), abs=1e-10)

    def test_level_constant_formula(self):
        # (1/m) log((n+m)!/m!) - (n/m) log 2 pi at n = 1, m = 4 is
        # (log 5 - log 2 pi) / 4
        expected = (log(5.0) - log(2 * pi)) / 4
        assert level_constant(1, 4) == pytest.approx(expected, abs=1e-14)
        assert level_constant(1, 4) == pytest.approx(-0.0571097884938109, abs=1e-12)

    def test_level_constant_tail_decreases_to_zero(self):
        # the constant changes sign near m = 2 pi - 1, so only the tail is
        # monotone; it decreases in magnitude beyond the hump and vanishes
        values = {m: level_constant(1, m) for m in (4, 8, 16, 32, 64)}
        assert abs(values[32]) < abs(values[16])
        assert abs(values[64]) < abs(values[32])
        assert abs(values[64]) < 0.04
        n2 = [abs(level_constant(2, m)) for m in (16, 32, 64, 128)]
        assert n2[1] < n2[0] and n2[2] < n2[1] and n2[3] < n2[2]

    def test_defect_scales_with_grid(self):
        grid = ChartGrid(t_points=5, z_points=7, z_radius=2.0)
        assert bergman_exactness_defect(np.array([0.5, -0.5]), 6, grid) <= 1e-9
