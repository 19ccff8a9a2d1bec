import numpy as np
import pytest

from steadytherm import DensityMatrix


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def random_complex(rng, n, m=None):
    m = n if m is None else m
    return rng.normal(size=(n, m)) + 1j * rng.normal(size=(n, m))


def random_hermitian(rng, n):
    a = random_complex(rng, n)
    return 0.5 * (a + a.conj().T)


def random_psd(rng, n):
    a = random_complex(rng, n)
    return a @ a.conj().T


def random_density_matrix(rng, n) -> DensityMatrix:
    rho = random_psd(rng, n)
    return DensityMatrix(rho / np.trace(rho).real)


def random_unitary(rng, n):
    q, r = np.linalg.qr(random_complex(rng, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))
