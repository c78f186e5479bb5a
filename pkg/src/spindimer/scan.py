"""Grid sweeps and isoline extraction behind the density-plot products."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .caloric import ELECTRIC, MAGNETIC, delta_s_electric, delta_s_magnetic
from .model import Fields, ModelParams
from .thermo import entropy


@dataclass(frozen=True)
class Grid2D:
    """Row-major scalar field: values[i, k] = f(x[k], y[i])."""

    x: np.ndarray
    y: np.ndarray
    values: np.ndarray
    x_label: str = "x"
    y_label: str = "y"
    value_label: str = "value"

    def __post_init__(self):
        if self.values.shape != (len(self.y), len(self.x)):
            raise ValueError("grid dimensions inconsistent with axes")
        if np.any(np.diff(self.x) <= 0) or np.any(np.diff(self.y) <= 0):
            raise ValueError("axes must be strictly increasing")


@dataclass(frozen=True)
class Polyline:
    """One extracted isoline at a fixed level, in data coordinates."""

    level: float
    points: np.ndarray  # shape (n, 2), columns (x, y)

    @property
    def closed(self) -> bool:
        return len(self.points) > 2 and np.allclose(self.points[0], self.points[-1])


def _axes(rng, resolution):
    lo, hi = rng
    if not hi > lo:
        raise ValueError(f"range must be non-degenerate, got {rng}")
    if resolution < 2:
        raise ValueError("resolution must be >= 2 per axis")
    return np.linspace(lo, hi, resolution)


def _split_resolution(resolution):
    # single int applies to both axes; a pair is (x, y)
    if np.isscalar(resolution):
        return int(resolution), int(resolution)
    rx, ry = resolution
    return int(rx), int(ry)


def entropy_map(params: ModelParams, e_fixed, b_range, t_range, resolution=400) -> Grid2D:
    """S/k_B over the (b, T) plane at fixed electric field."""
    rx, ry = _split_resolution(resolution)
    bs = _axes(b_range, rx)
    ts = _axes(t_range, ry)
    values = np.array(
        [[entropy(params, Fields(b=b, e=e_fixed), t) for b in bs] for t in ts]
    )
    return Grid2D(x=bs, y=ts, values=values,
                  x_label="b_over_J", y_label="t_over_J", value_label="s_over_kB")


def entropy_map_electric(params: ModelParams, b_fixed, e_range, t_range, resolution=400) -> Grid2D:
    """S/k_B over the (e, T) plane at fixed magnetic field."""
    rx, ry = _split_resolution(resolution)
    es = _axes(e_range, rx)
    ts = _axes(t_range, ry)
    values = np.array(
        [[entropy(params, Fields(b=b_fixed, e=e), t) for e in es] for t in ts]
    )
    return Grid2D(x=es, y=ts, values=values,
                  x_label="e_over_J", y_label="t_over_J", value_label="s_over_kB")


def delta_s_map(params: ModelParams, mode, fixed_field, span_range, t_range, resolution=400) -> Grid2D:
    """-Delta S / k_B over the (field span, T) plane."""
    rx, ry = _split_resolution(resolution)
    spans = _axes(span_range, rx)
    if np.any(spans < 0):
        raise ValueError("field spans must be >= 0")
    ts = _axes(t_range, ry)
    if mode == MAGNETIC:
        fn = lambda t, s: -delta_s_magnetic(params, fixed_field, t, s)
        x_label = "delta_b_over_J"
    elif mode == ELECTRIC:
        fn = lambda t, s: -delta_s_electric(params, fixed_field, t, s)
        x_label = "delta_e_over_J"
    else:
        raise ValueError(f"mode must be MAGNETIC or ELECTRIC, got {mode!r}")
    values = np.array([[fn(t, s) for s in spans] for t in ts])
    return Grid2D(x=spans, y=ts, values=values,
                  x_label=x_label, y_label="t_over_J", value_label="neg_delta_s_over_kB")


# marching squares: corner bits (c0 = lower-left, ccw), segment endpoints
# named by cell edge: 0 bottom, 1 right, 2 top, 3 left
_MS_TABLE = {
    1: [(3, 0)],
    2: [(0, 1)],
    3: [(3, 1)],
    4: [(1, 2)],
    6: [(0, 2)],
    7: [(3, 2)],
    8: [(2, 3)],
    9: [(0, 2)],
    11: [(2, 1)],
    12: [(1, 3)],
    13: [(0, 1)],
    14: [(3, 0)],
}


def _edge_point(edge, x0, x1, y0, y1, v00, v10, v11, v01, level):
    if edge == 0:  # bottom: (x0,y0)-(x1,y0)
        t = (level - v00) / (v10 - v00)
        return (x0 + t * (x1 - x0), y0)
    if edge == 1:  # right: (x1,y0)-(x1,y1)
        t = (level - v10) / (v11 - v10)
        return (x1, y0 + t * (y1 - y0))
    if edge == 2:  # top: (x0,y1)-(x1,y1)
        t = (level - v01) / (v11 - v01)
        return (x0 + t * (x1 - x0), y1)
    t = (level - v00) / (v01 - v00)  # left: (x0,y0)-(x0,y1)
    return (x0, y0 + t * (y1 - y0))


def _cell_segments(grid: Grid2D, i, k, level):
    x0, x1 = grid.x[k], grid.x[k + 1]
    y0, y1 = grid.y[i], grid.y[i + 1]
    v00 = grid.values[i, k]
    v10 = grid.values[i, k + 1]
    v01 = grid.values[i + 1, k]
    v11 = grid.values[i + 1, k + 1]
    idx = (v00 > level) | ((v10 > level) << 1) | ((v11 > level) << 2) | ((v01 > level) << 3)
    if idx in (0, 15):
        return []
    if idx in (5, 10):
        # saddle: disambiguate with the cell-center value
        center_in = 0.25 * (v00 + v10 + v01 + v11) > level
        if idx == 5:  # inside corners c0, c2
            pairs = [(3, 2), (0, 1)] if center_in else [(3, 0), (1, 2)]
        else:  # inside corners c1, c3
            pairs = [(0, 3), (2, 1)] if center_in else [(0, 1), (2, 3)]
    else:
        pairs = _MS_TABLE[idx]
    segs = []
    for ea, eb in pairs:
        pa = _edge_point(ea, x0, x1, y0, y1, v00, v10, v11, v01, level)
        pb = _edge_point(eb, x0, x1, y0, y1, v00, v10, v11, v01, level)
        if _point_key(pa) != _point_key(pb):
            # contour through a grid node yields a degenerate segment
            segs.append((pa, pb))
    return segs


def _point_key(p):
    return (round(p[0], 12), round(p[1], 12))


def _chain_segments(segs):
    """Join shared-endpoint segments into polylines (loops close on themselves)."""

    key = _point_key
    adjacency: dict[tuple, list[int]] = {}
    for n, (pa, pb) in enumerate(segs):
        adjacency.setdefault(key(pa), []).append(n)
        adjacency.setdefault(key(pb), []).append(n)

    used = [False] * len(segs)
    chains = []
    for start in range(len(segs)):
        if used[start]:
            continue
        used[start] = True
        chain = [segs[start][0], segs[start][1]]
        for head in (1, 0):  # extend forward, then backward
            while True:
                k = key(chain[-1] if head else chain[0])
                nxt = next((n for n in adjacency.get(k, []) if not used[n]), None)
                if nxt is None:
                    break
                used[nxt] = True
                pa, pb = segs[nxt]
                new_pt = pb if key(pa) == k else pa
                if head:
                    chain.append(new_pt)
                else:
                    chain.insert(0, new_pt)
        chains.append(np.array(chain))
    return chains


def extract_isolines(grid: Grid2D, levels) -> list[Polyline]:
    """Marching squares with linear edge interpolation.

    Saddle cells are resolved by the cell-center average.  Points always
    lie on cell edges, so bilinear interpolation on the source grid
    reproduces the level exactly.
    """
    out = []
    for level in levels:
        if not np.isfinite(level):
            raise ValueError(f"levels must be finite, got {level}")
        segs = []
        for i in range(len(grid.y) - 1):
            for k in range(len(grid.x) - 1):
                segs.extend(_cell_segments(grid, i, k, level))
        for chain in _chain_segments(segs):
            out.append(Polyline(level=float(level), points=chain))
    return out


def bilinear(grid: Grid2D, x: float, y: float) -> float:
    """Bilinear interpolation of the grid at one point (for verification)."""
    k = int(np.clip(np.searchsorted(grid.x, x) - 1, 0, len(grid.x) - 2))
    i = int(np.clip(np.searchsorted(grid.y, y) - 1, 0, len(grid.y) - 2))
    tx = (x - grid.x[k]) / (grid.x[k + 1] - grid.x[k])
    ty = (y - grid.y[i]) / (grid.y[i + 1] - grid.y[i])
    v = grid.values
    return float(
        v[i, k] * (1 - tx) * (1 - ty)
        + v[i, k + 1] * tx * (1 - ty)
        + v[i + 1, k] * (1 - tx) * ty
        + v[i + 1, k + 1] * tx * ty
    )
