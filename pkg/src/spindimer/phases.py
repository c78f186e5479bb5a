"""Ground-state classification and zero-temperature phase boundaries.

Three competing ground states: the fully polarized |F+> = |1/2, 1>, and
the entangled quantum ferrimagnetic doublet states |QF+> and |QF-> with
total spin z-component +1/2 and -1/2.  Classification always compares
the analytic level energies directly; the closed-form boundary curves
are used for plotting and as cross-checks only, since they have
removable singularities at g1 = 2*g2 and 2*h2 = j.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import SingularAnisotropy
from .model import Fields, ModelParams, analytic_spectrum

DEGENERACY_TOL = 1e-9


class PhaseLabel(enum.Enum):
    F_PLUS = "F+"
    F_MINUS = "F-"
    QF_PLUS = "QF+"
    QF_MINUS = "QF-"


@dataclass(frozen=True)
class GroundState:
    """Classification result: all labels within tol of the minimum energy."""

    labels: tuple[PhaseLabel, ...]
    energy: float

    @property
    def degenerate(self) -> bool:
        return len(self.labels) > 1


@dataclass(frozen=True)
class BoundaryCurve:
    """Sampled zero-temperature transition line in the (e, b) plane."""

    kind: str  # 'QFP_FP', 'QFM_FP' or 'QFM_QFP'
    samples: np.ndarray  # shape (n, 2), columns (e, b)


def candidate_energies(params: ModelParams, f: Fields) -> dict[PhaseLabel, float]:
    """Energies of the competing ground-state candidates at (b, e)."""
    sp = analytic_spectrum(params, f)
    cands = {
        PhaseLabel.F_PLUS: sp.eps_f_plus,
        PhaseLabel.QF_PLUS: sp.eps_qf_plus,
        PhaseLabel.QF_MINUS: sp.eps_qf_minus,
    }
    if f.b == 0.0:
        cands[PhaseLabel.F_MINUS] = sp.eps_f_minus
    return cands


def classify_ground_state(params: ModelParams, f: Fields) -> GroundState:
    """Label the ground state by direct energy comparison.

    Levels within DEGENERACY_TOL * j of the minimum are all reported; at
    b = 0 the fully polarized state carries its |F-> partner and the
    quantum ferrimagnetic states form the |QF+->/|QF--> doublet.
    """
    cands = candidate_energies(params, f)
    emin = min(cands.values())
    tol = DEGENERACY_TOL * params.j
    labels = tuple(lab for lab in PhaseLabel if lab in cands and cands[lab] <= emin + tol)
    return GroundState(labels=labels, energy=emin)


def boundary_qfp_fp(params: ModelParams, e: float) -> float:
    """Field b where |QF+> and |F+> are degenerate (closed form)."""
    j, d = params.j, params.d
    g1, g2 = params.g1, params.g2
    w8 = 8.0 * ((j * params.delta) ** 2 + e**2)
    u = (j + 2 * d) / g2
    v = 2 * j / g1
    return 0.25 * (u + v + math.sqrt((u - v) ** 2 + w8 / (g1 * g2)))


def boundary_qfm_qfp(params: ModelParams, e: float) -> float | None:
    """Field b where |QF-> and |QF+> are degenerate, or None.

    The crossing exists only for g1 > 2*g2 and a non-negative radicand.
    """
    j, d = params.j, params.d
    g1, g2 = params.g1, params.g2
    if g1 <= 2 * g2:
        return None
    w8 = 8.0 * ((j * params.delta) ** 2 + e**2)
    radicand = ((j - 2 * d) / g2) ** 2 - w8 / (g1 * (g1 - 2 * g2))
    if radicand < 0:
        return None
    return 0.5 * math.sqrt(radicand)


def boundary_qfm_fp(params: ModelParams, e: float) -> float:
    """Field b where |QF-> and |F+> are degenerate (closed form)."""
    j, d = params.j, params.d
    g1, g2 = params.g1, params.g2
    w4 = 4.0 * ((j * params.delta) ** 2 + e**2)
    u = (j + 2 * d) / (g1 + g2)
    v = j / g2
    return 0.25 * (u + v + math.sqrt((u - v) ** 2 + w4 / (g2 * (g1 + g2))))


def critical_g_ratio(params: ModelParams, e: float) -> float:
    """Largest g2/g1 ratio still admitting the |QF-> ground state.

    Collapses to 0 when j = 2d (warned, not raised).
    """
    j, d = params.j, params.d
    denom = j - 2 * d
    if abs(denom) < 1e-12:
        warnings.warn("j = 2d: critical g-ratio degenerates to 0", SingularAnisotropy)
        return 0.0
    w8 = 8.0 * ((j * params.delta) ** 2 + e**2)
    return 1.0 / (1.0 + math.sqrt(1.0 + w8 / denom**2))


def qfm_exists(params: ModelParams, f: Fields) -> bool:
    """True iff |QF-> is (one of) the lowest candidate state(s) at (b, e)."""
    sp = analytic_spectrum(params, f)
    tol = DEGENERACY_TOL * params.j
    return sp.eps_qf_minus <= min(sp.eps_f_plus, sp.eps_qf_plus) + tol


_CROSSING_FUNS = {
    "QFP_FP": lambda sp: sp.eps_qf_plus - sp.eps_f_plus,
    "QFM_FP": lambda sp: sp.eps_qf_minus - sp.eps_f_plus,
    "QFM_QFP": lambda sp: sp.eps_qf_minus - sp.eps_qf_plus,
}


def crossing_field(params: ModelParams, e: float, kind: str, b_max: float = 50.0) -> float | None:
    """Bisection-refined eigenvalue crossing for one boundary kind.

    Independent of the closed forms: finds a sign change of the level
    difference along b and refines it with a root bracketer.
    """
    fun = _CROSSING_FUNS[kind]

    def g(b: float) -> float:
        return fun(analytic_spectrum(params, Fields(b=b, e=e)))

    bs = np.linspace(0.0, b_max, 2001)
    vals = np.array([g(b) for b in bs])
    sign = np.sign(vals)
    idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    if len(idx) == 0:
        # tangential or absent crossing
        zero = np.nonzero(np.abs(vals) < 1e-12 * params.j)[0]
        return float(bs[zero[0]]) if len(zero) else None
    i = idx[-1]  # the relevant crossing is the last one (phase below, F+/QF+ above)
    return float(brentq(g, bs[i], bs[i + 1], xtol=1e-14, rtol=8.9e-16))


def phase_diagram(
    params: ModelParams,
    e_range: tuple[float, float],
    b_range: tuple[float, float],
    resolution: int = 201,
) -> tuple[np.ndarray, list[BoundaryCurve]]:
    """Label grid plus boundary polylines over an (e, b) rectangle.

    Returns (labels, curves) where labels[i_b, i_e] holds the phase name
    ('F+', 'QF+', 'QF-' or a '|'-joined degenerate combination) on a
    row-major grid with b as the row axis.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2 per axis")
    es = np.linspace(e_range[0], e_range[1], resolution)
    bs = np.linspace(b_range[0], b_range[1], resolution)
    labels = np.empty((resolution, resolution), dtype=object)
    for i, b in enumerate(bs):
        for k, e in enumerate(es):
            gs = classify_ground_state(params, Fields(b=b, e=e))
            labels[i, k] = "|".join(lab.value for lab in gs.labels)

    curves = []
    for kind, closed_form in (
        ("QFP_FP", boundary_qfp_fp),
        ("QFM_FP", boundary_qfm_fp),
        ("QFM_QFP", boundary_qfm_qfp),
    ):
        pts = []
        for e in es:
            b = closed_form(params, e)
            if b is None:
                b = crossing_field(params, e, kind, b_max=max(b_range[1], 1.0))
            if b is None or not (b_range[0] <= b <= b_range[1]):
                continue
            # keep only segments where the two phases actually meet as
            # ground states (a crossing of excited levels is not a boundary)
            gs = classify_ground_state(params, Fields(b=b, e=e))
            if gs.degenerate:
                pts.append((e, b))
        if len(pts) >= 2:
            curves.append(BoundaryCurve(kind=kind, samples=np.array(pts)))
    return labels, curves
