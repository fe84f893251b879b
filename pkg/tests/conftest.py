import numpy as np
import pytest


def random_hermitian_pd(rng, order, shift=0.4):
    """Random complex Hermitian positive definite matrix, moderate condition."""
    a = rng.normal(size=(order, order)) + 1j * rng.normal(size=(order, order))
    return a.conj().T @ a + shift * np.eye(order)


def random_lower_positive(rng, order, scale=0.5):
    """Random lower triangular matrix with positive real diagonal."""
    strict = np.tril(
        rng.normal(size=(order, order)) + 1j * rng.normal(size=(order, order)), -1
    )
    return scale * strict + np.diag(np.exp(rng.uniform(-0.8, 0.8, order)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
