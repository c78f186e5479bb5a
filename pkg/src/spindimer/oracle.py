"""Independent numerical cross-check of the closed-form results.

Everything here avoids the analytic spectrum on purpose: eigenvalues come
from a cyclic Jacobi sweep over the real symmetric embedding of the 6x6
Hermitian matrix, and thermodynamic derivatives come from Richardson-
extrapolated central differences of the numerically computed free energy.
Disagreement with the closed forms therefore points at a transcription
error on exactly one side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import NonHermitianInput, NonPositiveTemperature, StepUnderflow
from .model import Fields, ModelParams, hamiltonian_matrix

MIN_FD_STEP = 1e-9
DEFAULT_FD_STEP = 1e-4


@dataclass(frozen=True)
class NumericSpectrum:
    """Eigenvalues of a 6x6 Hermitian matrix, ascending."""

    eigenvalues: np.ndarray


@njit(cache=True)
def _jacobi_sweeps(a, v, tol, max_sweeps):  # pragma: no cover - compiled
    """Cyclic Jacobi diagonalization of a real symmetric matrix in place.

    Rotations accumulate into v; returns the final off-diagonal Frobenius
    norm.  Convergence: off-diagonal norm <= tol.
    """
    n = a.shape[0]
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * a[p, q] * a[p, q]
        off = math.sqrt(off)
        if off <= tol:
            return off
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    off = 0.0
    for p in range(n - 1):
        for q in range(p + 1, n):
            off += 2.0 * a[p, q] * a[p, q]
    return math.sqrt(off)


def jacobi_eigh(sym: np.ndarray, tol_factor: float = 1e-13, max_sweeps: int = 60):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi.

    Returns (w, v) with w ascending and columns of v the eigenvectors.
    """
    a = np.array(sym, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("jacobi_eigh expects a square matrix")
    scale = np.linalg.norm(a)
    v = np.eye(a.shape[0])
    _jacobi_sweeps(a, v, tol_factor * max(scale, 1e-300), max_sweeps)
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def real_embedding(m: np.ndarray) -> np.ndarray:
    """Real symmetric 2n x 2n embedding [[Re, -Im], [Im, Re]] of Hermitian m.

    Its spectrum is that of m with every eigenvalue doubled.
    """
    re, im = m.real, m.imag
    return np.block([[re, -im], [im, re]])


def numeric_spectrum(m: np.ndarray) -> NumericSpectrum:
    """Eigenvalues of a 6x6 Hermitian matrix via the Jacobi oracle."""
    m = np.asarray(m, dtype=complex)
    herm_dev = np.max(np.abs(m - m.conj().T))
    if herm_dev > 1e-12 * max(1.0, np.max(np.abs(m))):
        raise NonHermitianInput(f"matrix deviates from Hermiticity by {herm_dev:.3e}")
    w, _ = jacobi_eigh(real_embedding(m))
    # doubled spectrum of the embedding: keep one copy of each pair
    return NumericSpectrum(eigenvalues=w[::2].copy())


def numeric_free_energy(params: ModelParams, f: Fields, t: float) -> float:
    """F = -T ln Z from the Jacobi eigenvalues, in overflow-safe shifted form."""
    if t <= 0:
        raise NonPositiveTemperature(f"temperature must be > 0, got {t}")
    eps = numeric_spectrum(hamiltonian_matrix(params, f)).eigenvalues
    emin = eps[0]
    return emin - t * math.log(np.sum(np.exp(-(eps - emin) / t)))


def _free_energy_even(params: ModelParams, b: float, e: float, t: float) -> float:
    # F is even in both fields, so mirror negative stencil points back in.
    return numeric_free_energy(params, Fields(b=abs(b), e=abs(e)), t)


def fd_derivative(
    params: ModelParams,
    f: Fields,
    t: float,
    which: str,
    step: float = DEFAULT_FD_STEP,
) -> float:
    """Central-difference derivative of the numeric free energy.

    which='b' -> m/m_s (normalized by the saturation moment g1/2 + g2),
    which='e' -> P/mu, which='t' -> S.  One Richardson extrapolation level
    on top of the central stencil.
    """
    if step < MIN_FD_STEP:
        raise StepUnderflow(f"step {step} below {MIN_FD_STEP}")
    if which not in ("b", "e", "t"):
        raise ValueError(f"which must be one of 'b', 'e', 't', got {which!r}")
    if t <= 0:
        raise NonPositiveTemperature(f"temperature must be > 0, got {t}")

    if which == "t" and t - step <= 0:
        step = t / 4.0

    def deriv(h: float) -> float:
        if which == "b":
            fp = _free_energy_even(params, f.b + h, f.e, t)
            fm = _free_energy_even(params, f.b - h, f.e, t)
        elif which == "e":
            fp = _free_energy_even(params, f.b, f.e + h, t)
            fm = _free_energy_even(params, f.b, f.e - h, t)
        else:
            fp = _free_energy_even(params, f.b, f.e, t + h)
            fm = _free_energy_even(params, f.b, f.e, t - h)
        return -(fp - fm) / (2.0 * h)

    d = (4.0 * deriv(step / 2.0) - deriv(step)) / 3.0
    if which == "b":
        return d / (0.5 * params.g1 + params.g2)
    return d
