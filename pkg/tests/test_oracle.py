import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from spindimer.errors import NonHermitianInput, NonPositiveTemperature, StepUnderflow
from spindimer.model import Fields, ModelParams, hamiltonian_matrix
from spindimer.oracle import (
    fd_derivative,
    jacobi_eigh,
    numeric_free_energy,
    numeric_spectrum,
    real_embedding,
)
from spindimer import thermo

P0 = ModelParams()
F0 = Fields()


def test_diagonal_matrix():
    diag = np.array([3.0, -1.0, 0.5, 2.0, -4.0, 1.0])
    out = numeric_spectrum(np.diag(diag).astype(complex))
    assert_allclose(out.eigenvalues, np.sort(diag), atol=1e-14)


def test_known_block_diagonalization():
    # two 2x2 blocks diagonalized by hand at the isotropic zero-field point
    out = numeric_spectrum(hamiltonian_matrix(P0, F0))
    assert_allclose(out.eigenvalues, [-1, -1, 0.5, 0.5, 0.5, 0.5], atol=1e-12)


def test_rejects_non_hermitian():
    m = np.zeros((6, 6), dtype=complex)
    m[0, 1] = 1.0
    with pytest.raises(NonHermitianInput):
        numeric_spectrum(m)


def test_jacobi_reconstruction():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = rng.normal(size=(8, 8))
        sym = a + a.T
        w, v = jacobi_eigh(sym)
        recon = v @ np.diag(w) @ v.T
        assert np.max(np.abs(recon - sym)) < 1e-11 * np.linalg.norm(sym)


def test_jacobi_reconstruction_on_embedding():
    rng = np.random.default_rng(4)
    for _ in range(20):
        p = ModelParams(delta=rng.uniform(0, 2), d=rng.uniform(-2, 2),
                        g1=rng.uniform(0.5, 4), g2=rng.uniform(0.5, 4))
        f = Fields(b=rng.uniform(0, 4), e=rng.uniform(0, 4))
        k = real_embedding(hamiltonian_matrix(p, f))
        w, v = jacobi_eigh(k)
        recon = v @ np.diag(w) @ v.T
        assert np.max(np.abs(recon - k)) < 1e-11 * max(np.linalg.norm(k), 1.0)


def test_free_energy_high_temperature_limit():
    t = 1e6
    f_num = numeric_free_energy(P0, F0, t)
    eps = numeric_spectrum(hamiltonian_matrix(P0, F0)).eigenvalues
    assert_allclose(f_num, np.mean(eps) - t * math.log(6), rtol=1e-9)


def test_free_energy_known_value():
    # Z = 2e + 4e^{-1/2} over the six known levels at T = 1
    expected = -math.log(2 * math.e + 4 * math.exp(-0.5))
    assert_allclose(numeric_free_energy(P0, F0, 1.0), expected, atol=1e-12)


def test_free_energy_ground_state_limit():
    assert abs(numeric_free_energy(P0, F0, 1e-6) - (-1.0)) < 1e-5


def test_free_energy_rejects_bad_temperature():
    with pytest.raises(NonPositiveTemperature):
        numeric_free_energy(P0, F0, 0.0)


def test_fd_magnetization_saturates():
    p = ModelParams(g1=2, g2=2)
    m = fd_derivative(p, Fields(b=12.0), 0.02, "b")
    assert_allclose(m, 1.0, atol=1e-8)


def test_fd_polarization_odd_in_e():
    assert abs(fd_derivative(P0, Fields(b=0.9, e=0.0), 0.4, "e")) < 1e-10


def test_fd_entropy_matches_closed_form():
    rng = np.random.default_rng(5)
    for _ in range(100):
        p = ModelParams(delta=rng.uniform(0, 2), d=rng.uniform(-2, 2),
                        g1=rng.uniform(0.5, 4), g2=rng.uniform(0.5, 4))
        f = Fields(b=rng.uniform(0, 4), e=rng.uniform(0, 4))
        t = rng.uniform(0.05, 5.0)
        assert abs(fd_derivative(p, f, t, "t") - thermo.entropy(p, f, t)) < 1e-6


def test_fd_step_underflow():
    with pytest.raises(StepUnderflow):
        fd_derivative(P0, F0, 1.0, "b", step=1e-10)
