"""Mixed spin-(1/2, 1) Heisenberg dimer in crossed magnetic and electric fields.

Two exchange-coupled ions, S = 1/2 and mu = 1, with XXZ exchange J(delta),
uniaxial single-ion anisotropy d acting on the spin-1 ion, a longitudinal
magnetic field (energy b = mu_B * B per unit g-factor) and a transverse
electric field that enters through the inverse Dzyaloshinskii-Moriya
(Katsura-Nagaosa-Balatsky) term e * (S^x mu^y - S^y mu^x).

Units: k_B = mu_B = 1, energies in units of the exchange coupling j unless
dimensional inputs are supplied.  The bond points along x, B along z and
E along y; only the scalar field energies b and e are free.

Basis order is fixed to
    |1/2,1>, |1/2,0>, |1/2,-1>, |-1/2,1>, |-1/2,0>, |-1/2,-1>
so the 6x6 Hamiltonian is block diagonal with two 1x1 and two 2x2 blocks
and the full spectrum is available in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ModelParams:
    """Coupling constants of the dimer.

    j      -- exchange coupling, > 0 (antiferromagnetic regime)
    delta  -- XXZ exchange anisotropy (dimensionless)
    d      -- uniaxial single-ion anisotropy on the spin-1 ion
    g1, g2 -- Lande g-factors of the spin-1/2 and spin-1 ion
    mu     -- microscopic polarization scale (dimensionless, default 1)
    """

    j: float = 1.0
    delta: float = 1.0
    d: float = 0.0
    g1: float = 2.0
    g2: float = 2.0
    mu: float = 1.0

    def __post_init__(self):
        if self.j <= 0:
            raise ValueError(f"exchange coupling j must be > 0, got {self.j}")
        if self.g1 <= 0 or self.g2 <= 0:
            raise ValueError(f"g-factors must be > 0, got g1={self.g1}, g2={self.g2}")
        if self.mu <= 0:
            raise ValueError(f"polarization scale mu must be > 0, got {self.mu}")


@dataclass(frozen=True)
class Fields:
    """External field energies: b = mu_B*B (magnetic), e (electric).

    Only the b >= 0, e >= 0 quadrant is modeled; the spectrum is even in
    both fields up to a relabeling of states.
    """

    b: float = 0.0
    e: float = 0.0

    def __post_init__(self):
        if self.b < 0:
            raise ValueError(f"magnetic field energy b must be >= 0, got {self.b}")
        if self.e < 0:
            raise ValueError(f"electric field energy e must be >= 0, got {self.e}")


@dataclass(frozen=True)
class Spectrum:
    """Closed-form eigenvalues and eigenvector data of the dimer.

    eps[0..5] follow the fixed level ordering:
      eps1,2 -- fully polarized |+-1/2, +-1> levels
      eps3,4 -- lower/upper level of the S^z_tot = +1/2 doublet
      eps5,6 -- lower/upper level of the S^z_tot = -1/2 doublet
    c1plus/c1minus (c2plus/c2minus) are the coefficient moduli of the
    entangled doublet states; phi = arctan(e / (j*delta)) is the common
    complex phase induced by the electric field.
    """

    eps: tuple[float, float, float, float, float, float]
    c1plus: float
    c1minus: float
    c2plus: float
    c2minus: float
    phi: float

    @property
    def eps_f_plus(self) -> float:
        return self.eps[0]

    @property
    def eps_f_minus(self) -> float:
        return self.eps[1]

    @property
    def eps_qf_plus(self) -> float:
        return self.eps[2]

    @property
    def eps_qf_minus(self) -> float:
        return self.eps[4]


def zeeman_terms(params: ModelParams, b: float) -> tuple[float, float]:
    """Per-ion Zeeman energies (h1, h2) = (g1*b, g2*b)."""
    if b < 0:
        raise ValueError(f"magnetic field energy b must be >= 0, got {b}")
    return params.g1 * b, params.g2 * b


def offdiag_magnitude(params: ModelParams, e: float) -> float:
    """Magnitude sqrt((j*delta)^2 + e^2) / sqrt(2) of the 2x2-block coupling."""
    return math.hypot(params.j * params.delta, e) / math.sqrt(2.0)


def complex_phase(params: ModelParams, e: float) -> float:
    """Phase phi = arctan(e / (j*delta)) of the off-diagonal elements."""
    return math.atan2(e, params.j * params.delta)


def hamiltonian_matrix(params: ModelParams, f: Fields) -> np.ndarray:
    """Build the 6x6 Hermitian matrix in the fixed product basis.

    Nonzero off-diagonals sit only at (2,4)/(3,5) and their conjugates;
    their common magnitude and phase come from the electric field.
    """
    j, d = params.j, params.d
    h1, h2 = zeeman_terms(params, f.b)
    phi = complex_phase(params, f.e)
    w = offdiag_magnitude(params, f.e)
    off = w * complex(math.cos(phi), math.sin(phi))

    m = np.zeros((6, 6), dtype=complex)
    m[0, 0] = 0.5 * (j + 2 * d - (h1 + 2 * h2))
    m[1, 1] = -0.5 * h1
    m[2, 2] = -0.5 * (j - 2 * d + (h1 - 2 * h2))
    m[3, 3] = -0.5 * (j - 2 * d - (h1 - 2 * h2))
    m[4, 4] = 0.5 * h1
    m[5, 5] = 0.5 * (j + 2 * d + (h1 + 2 * h2))
    m[1, 3] = off
    m[2, 4] = off
    m[3, 1] = off.conjugate()
    m[4, 2] = off.conjugate()
    return m


def analytic_spectrum(params: ModelParams, f: Fields) -> Spectrum:
    """Closed-form diagonalization of the dimer Hamiltonian.

    The two 2x2 blocks mix |1/2,0> with |-1/2,1> (total S^z = +1/2) and
    |1/2,-1> with |-1/2,0> (total S^z = -1/2); the remaining two basis
    states are exact eigenstates.
    """
    j, d = params.j, params.d
    h1, h2 = zeeman_terms(params, f.b)
    w8 = 8.0 * ((j * params.delta) ** 2 + f.e**2)

    a = j - 2 * d
    r1 = math.sqrt((a - 2 * (h1 - h2)) ** 2 + w8)
    r2 = math.sqrt((a + 2 * (h1 - h2)) ** 2 + w8)

    eps1 = 0.5 * (j + 2 * d - (h1 + 2 * h2))
    eps2 = 0.5 * (j + 2 * d + (h1 + 2 * h2))
    eps3 = -0.25 * (a + 2 * h2) - 0.25 * r1
    eps4 = -0.25 * (a + 2 * h2) + 0.25 * r1
    eps5 = -0.25 * (a - 2 * h2) - 0.25 * r2
    eps6 = -0.25 * (a - 2 * h2) + 0.25 * r2

    x1 = (a - 2 * (h1 - h2)) / r1
    x2 = (a + 2 * (h1 - h2)) / r2
    return Spectrum(
        eps=(eps1, eps2, eps3, eps4, eps5, eps6),
        c1plus=math.sqrt(0.5 * (1.0 + x1)),
        c1minus=math.sqrt(0.5 * (1.0 - x1)),
        c2plus=math.sqrt(0.5 * (1.0 + x2)),
        c2minus=math.sqrt(0.5 * (1.0 - x2)),
        phi=complex_phase(params, f.e),
    )


def level_derivatives(params: ModelParams, f: Fields) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Eigenvalues and their analytic field derivatives.

    Returns (eps, deps_db, deps_de), each shape (6,), in the same level
    order as :class:`Spectrum`.  These feed the closed-form magnetization
    and polarization via the Hellmann-Feynman sums.
    """
    j, d = params.j, params.d
    g1, g2 = params.g1, params.g2
    h1, h2 = zeeman_terms(params, f.b)
    w8 = 8.0 * ((j * params.delta) ** 2 + f.e**2)

    a = j - 2 * d
    u1 = a - 2 * (h1 - h2)
    u2 = a + 2 * (h1 - h2)
    r1 = math.sqrt(u1 * u1 + w8)
    r2 = math.sqrt(u2 * u2 + w8)

    eps = np.array(
        [
            0.5 * (j + 2 * d - (h1 + 2 * h2)),
            0.5 * (j + 2 * d + (h1 + 2 * h2)),
            -0.25 * (a + 2 * h2) - 0.25 * r1,
            -0.25 * (a + 2 * h2) + 0.25 * r1,
            -0.25 * (a - 2 * h2) - 0.25 * r2,
            -0.25 * (a - 2 * h2) + 0.25 * r2,
        ]
    )

    # dR/db = +-2(g1-g2) * u / R, dR/de = 8e / R
    dr1_db = -2.0 * (g1 - g2) * u1 / r1
    dr2_db = 2.0 * (g1 - g2) * u2 / r2
    deps_db = np.array(
        [
            -0.5 * (g1 + 2 * g2),
            0.5 * (g1 + 2 * g2),
            -0.5 * g2 - 0.25 * dr1_db,
            -0.5 * g2 + 0.25 * dr1_db,
            0.5 * g2 - 0.25 * dr2_db,
            0.5 * g2 + 0.25 * dr2_db,
        ]
    )

    dr1_de = 8.0 * f.e / r1
    dr2_de = 8.0 * f.e / r2
    deps_de = np.array(
        [
            0.0,
            0.0,
            -0.25 * dr1_de,
            0.25 * dr1_de,
            -0.25 * dr2_de,
            0.25 * dr2_de,
        ]
    )
    return eps, deps_db, deps_de
