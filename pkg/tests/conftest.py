import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from gaussian.estados import apply_interferometer, make_state  # noqa: E402
from simulator.haar import haar_unitary  # noqa: E402


def estado_aleatorio(rng, ell, displaced=False):
    """Producto de modos comprimidos-térmicos mezclado por una unitaria de Haar"""
    n = rng.uniform(0.1, 1.0, ell)
    r = rng.uniform(0.0, 1.0, ell)
    fases = np.exp(2j * np.pi * rng.uniform(size=ell))
    m = r * np.sqrt(n * (n + 1)) * fases
    alpha = None
    if displaced:
        alpha = 0.7 * (rng.standard_normal(ell) + 1j * rng.standard_normal(ell))
    producto = make_state(np.diag(n), np.diag(m), alpha)
    return apply_interferometer(producto, haar_unitary(ell, rng))


def simetrica_aleatoria(rng, dim):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (a + a.T)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def random_state(rng):
    def fabrica(ell, displaced=False):
        return estado_aleatorio(rng, ell, displaced)

    return fabrica


@pytest.fixture
def random_symmetric(rng):
    def fabrica(dim):
        return simetrica_aleatoria(rng, dim)

    return fabrica


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: barridos Monte Carlo de tamaño completo")
