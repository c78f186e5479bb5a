"""Magnetocaloric / electrocaloric figures of merit.

Isentropes (adiabatic temperature traces), isothermal entropy changes for
a field swept from zero to a span value, and the refrigerant capacity
Rc = |integral of Delta S between the half-extremum temperatures T1, T2|.
Sign convention: -Delta S > 0 is the conventional effect, < 0 the inverse
one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.optimize import brentq

from .errors import NoExtremumOfRequestedSign, TargetOutOfRange
from .model import Fields, ModelParams
from .thermo import LN6, entropy

T_FLOOR = 1e-6
T_CEILING = 1e3

MAGNETIC = "MAGNETIC"
ELECTRIC = "ELECTRIC"
CONVENTIONAL = "CONVENTIONAL"
INVERSE = "INVERSE"
NULL = "NULL"

_SIGN_DEADBAND = 1e-12


@dataclass(frozen=True)
class Isentrope:
    """Constant-entropy trace T(field) at fixed transverse field."""

    target_s: float
    axis: str  # 'b' or 'e'
    fixed_field: float
    samples: np.ndarray  # shape (n, 2), columns (field, T)
    gaps: np.ndarray  # field values where S never reaches target below T_CEILING


@dataclass(frozen=True)
class CaloricCurve:
    """-Delta S / k_B versus temperature for one field span."""

    mode: str  # MAGNETIC or ELECTRIC
    span: float
    fixed_field: float  # e for MAGNETIC sweeps, b for ELECTRIC sweeps
    t: np.ndarray
    neg_delta_s: np.ndarray


@dataclass(frozen=True)
class RcResult:
    """Refrigerant capacity with its half-extremum temperature window."""

    rc_abs: float
    t1: float
    t2: float
    mode: str  # CONVENTIONAL or INVERSE
    clamped_t1: bool = False
    clamped_t2: bool = False


def _solve_isentropic_t(params: ModelParams, f: Fields, target_s: float) -> float | None:
    """Invert S(T) = target_s by root bracketing (S is monotone in T).

    Returns None when even T_CEILING cannot supply the target entropy and
    the temperature floor when the residual entropy already exceeds it.
    """
    t_lo = T_FLOOR * params.j
    t_hi = T_CEILING * params.j
    if entropy(params, f, t_hi) < target_s:
        return None
    if entropy(params, f, t_lo) >= target_s:
        return t_lo
    return float(
        brentq(lambda t: entropy(params, f, t) - target_s, t_lo, t_hi, rtol=1e-12)
    )


def _isentrope(params, axis, fixed_field, target_s, grid) -> Isentrope:
    if not (0.0 < target_s < LN6):
        raise TargetOutOfRange(f"target entropy must lie in (0, ln 6), got {target_s}")
    samples, gaps = [], []
    for x in np.asarray(grid, dtype=float):
        f = Fields(b=x, e=fixed_field) if axis == "b" else Fields(b=fixed_field, e=x)
        t = _solve_isentropic_t(params, f, target_s)
        if t is None:
            gaps.append(x)
        else:
            samples.append((x, t))
    return Isentrope(
        target_s=target_s,
        axis=axis,
        fixed_field=fixed_field,
        samples=np.array(samples).reshape(-1, 2),
        gaps=np.array(gaps),
    )


def isentrope_magnetic(params: ModelParams, e_fixed: float, target_s: float, b_grid) -> Isentrope:
    """T(b) along S = target_s at fixed electric field."""
    return _isentrope(params, "b", e_fixed, target_s, b_grid)


def isentrope_electric(params: ModelParams, b_fixed: float, target_s: float, e_grid) -> Isentrope:
    """T(e) along S = target_s at fixed magnetic field."""
    return _isentrope(params, "e", b_fixed, target_s, e_grid)


def delta_s_magnetic(params: ModelParams, e: float, t: float, span_b: float) -> float:
    """Delta S = S(T, b=span_b) - S(T, b=0) at fixed electric field."""
    if span_b < 0:
        raise ValueError(f"field span must be >= 0, got {span_b}")
    return entropy(params, Fields(b=span_b, e=e), t) - entropy(params, Fields(b=0.0, e=e), t)


def delta_s_electric(params: ModelParams, b: float, t: float, span_e: float) -> float:
    """Delta S = S(T, e=span_e) - S(T, e=0) at fixed magnetic field."""
    if span_e < 0:
        raise ValueError(f"field span must be >= 0, got {span_e}")
    return entropy(params, Fields(b=b, e=span_e), t) - entropy(params, Fields(b=b, e=0.0), t)


def caloric_curve(
    params: ModelParams,
    mode: str,
    span: float,
    fixed_field: float = 0.0,
    t_grid=None,
) -> CaloricCurve:
    """Sample -Delta S(T) for one field span."""
    if t_grid is None:
        t_grid = np.linspace(0.01, 3.0, 200) * params.j
    t_grid = np.asarray(t_grid, dtype=float)
    if mode == MAGNETIC:
        y = np.array([-delta_s_magnetic(params, fixed_field, t, span) for t in t_grid])
    elif mode == ELECTRIC:
        y = np.array([-delta_s_electric(params, fixed_field, t, span) for t in t_grid])
    else:
        raise ValueError(f"mode must be MAGNETIC or ELECTRIC, got {mode!r}")
    return CaloricCurve(mode=mode, span=span, fixed_field=fixed_field, t=t_grid, neg_delta_s=y)


def classify_caloric(delta_s: float) -> str:
    """Sign rule: -Delta S > 0 conventional, < 0 inverse, ~0 null."""
    if abs(delta_s) < _SIGN_DEADBAND:
        return NULL
    return CONVENTIONAL if -delta_s > 0 else INVERSE


def _refine_extremum(t: np.ndarray, y: np.ndarray, k: int) -> tuple[float, float]:
    """Three-point parabolic refinement of the extremum around sample k."""
    if k == 0 or k == len(t) - 1:
        return float(t[k]), float(y[k])
    t0, t1, t2 = t[k - 1], t[k], t[k + 1]
    y0, y1, y2 = y[k - 1], y[k], y[k + 1]
    denom = (t0 - t1) * (t0 - t2) * (t1 - t2)
    a = (t2 * (y1 - y0) + t1 * (y0 - y2) + t0 * (y2 - y1)) / denom
    b = (t2 * t2 * (y0 - y1) + t1 * t1 * (y2 - y0) + t0 * t0 * (y1 - y2)) / denom
    if a == 0.0:
        return float(t1), float(y1)
    tv = -b / (2 * a)
    if not (t0 <= tv <= t2):
        return float(t1), float(y1)
    c = y1 - a * t1 * t1 - b * t1
    return float(tv), float(a * tv * tv + b * tv + c)


def _half_crossing(t, y, level, k, direction):
    """First linear-interpolated crossing of `level` walking away from k."""
    rng = range(k, 0, -1) if direction < 0 else range(k, len(t) - 1)
    for i in rng:
        ja, jb = (i, i - 1) if direction < 0 else (i, i + 1)
        ya, yb = y[ja] - level, y[jb] - level
        if ya == 0.0:
            return float(t[ja]), False
        if ya * yb < 0:
            frac = ya / (ya - yb)
            return float(t[ja] + frac * (t[jb] - t[ja])), False
        if yb == 0.0:
            return float(t[jb]), False
    return float(t[0] if direction < 0 else t[-1]), True


def refrigerant_capacity(
    curve: CaloricCurve,
    mode: str = CONVENTIONAL,
    fixed_t2: float | None = None,
) -> RcResult:
    """Rc = |integral of Delta S dT| between the half-extremum temperatures.

    The extremum of -Delta S(T) with the sign demanded by `mode` is
    located on the grid and sharpened by a three-point parabola; T1 and
    T2 are the crossings of half its amplitude (linear interpolation
    between samples, clamped to the grid ends when absent).  fixed_t2
    overrides the upper limit.  Quadrature: composite Simpson on the
    native samples plus interpolated endpoints.
    """
    t, y = curve.t, curve.neg_delta_s
    if len(t) < 8:
        raise ValueError("caloric curve needs at least 8 samples")
    if mode == CONVENTIONAL:
        k = int(np.argmax(y))
        if y[k] <= _SIGN_DEADBAND:
            raise NoExtremumOfRequestedSign("curve never positive")
    elif mode == INVERSE:
        k = int(np.argmin(y))
        if y[k] >= -_SIGN_DEADBAND:
            raise NoExtremumOfRequestedSign("curve never negative")
    else:
        raise ValueError(f"mode must be CONVENTIONAL or INVERSE, got {mode!r}")

    _, y_ext = _refine_extremum(t, y, k)
    level = 0.5 * y_ext
    t1, clamped1 = _half_crossing(t, y, level, k, -1)
    t2, clamped2 = _half_crossing(t, y, level, k, +1)
    if fixed_t2 is not None:
        t2 = float(fixed_t2)
        clamped2 = False
        if t2 > t[-1]:
            t2, clamped2 = float(t[-1]), True
    if t1 >= t2:
        raise ValueError(f"degenerate integration window [{t1}, {t2}]")

    inner = (t > t1) & (t < t2)
    xs = np.concatenate(([t1], t[inner], [t2]))
    ys = np.concatenate(([np.interp(t1, t, y)], y[inner], [np.interp(t2, t, y)]))
    xs, keep = np.unique(xs, return_index=True)
    ys = ys[keep]
    rc = abs(simpson(-ys, x=xs))  # integrand is Delta S = -(-Delta S)
    return RcResult(rc_abs=float(rc), t1=t1, t2=t2, mode=mode,
                    clamped_t1=clamped1, clamped_t2=clamped2)
