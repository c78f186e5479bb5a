"""Minimal deterministic SVG rendering for heatmaps and isolines.

Purely static output: a cell-per-sample heatmap with a linear color map,
optional overlaid polylines, axis frame and value range annotation.  The
byte stream depends only on the data passed in.
"""

from __future__ import annotations

import numpy as np

# five-stop perceptual ramp (dark violet -> yellow)
_STOPS = np.array(
    [
        (0.267, 0.005, 0.329),
        (0.229, 0.322, 0.546),
        (0.127, 0.566, 0.551),
        (0.369, 0.789, 0.383),
        (0.993, 0.906, 0.144),
    ]
)

# qualitative palette for discrete label grids
_DISCRETE = ["#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860",
             "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd"]

_MARGIN_L, _MARGIN_B, _MARGIN_T, _MARGIN_R = 56, 40, 28, 16


def _ramp_color(v: float) -> str:
    v = min(max(v, 0.0), 1.0)
    pos = v * (len(_STOPS) - 1)
    i = min(int(pos), len(_STOPS) - 2)
    t = pos - i
    rgb = (1 - t) * _STOPS[i] + t * _STOPS[i + 1]
    return "#%02x%02x%02x" % tuple(int(round(255 * c)) for c in rgb)


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def render_heatmap_svg(
    x,
    y,
    values,
    polylines=(),
    x_label: str = "x",
    y_label: str = "y",
    title: str = "",
    width: int = 720,
    height: int = 540,
) -> str:
    """Render a scalar or label grid plus polyline overlays as SVG text.

    `values` may be numeric (linear color map) or strings (discrete
    palette with a legend).  Polylines are (label, points) pairs with
    points in data coordinates.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    values = np.asarray(values)
    plot_w = width - _MARGIN_L - _MARGIN_R
    plot_h = height - _MARGIN_T - _MARGIN_B

    def px(v):
        return _MARGIN_L + (v - x[0]) / (x[-1] - x[0]) * plot_w

    def py(v):
        return _MARGIN_T + plot_h - (v - y[0]) / (y[-1] - y[0]) * plot_h

    discrete = values.dtype.kind in ("U", "S", "O")
    if discrete:
        labels = sorted({str(v) for v in values.ravel()})
        color_of = {lab: _DISCRETE[i % len(_DISCRETE)] for i, lab in enumerate(labels)}
        annotation = "  ".join(f"{lab}:{color_of[lab]}" for lab in labels)
    else:
        vmin, vmax = float(np.min(values)), float(np.max(values))
        vspan = vmax - vmin if vmax > vmin else 1.0
        annotation = f"range [{_fmt(vmin)}, {_fmt(vmax)}]"

    # cell edges at midpoints between samples
    xe = np.concatenate(([x[0]], 0.5 * (x[:-1] + x[1:]), [x[-1]]))
    ye = np.concatenate(([y[0]], 0.5 * (y[:-1] + y[1:]), [y[-1]]))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    for i in range(len(y)):
        for k in range(len(x)):
            v = values[i, k]
            fill = color_of[str(v)] if discrete else _ramp_color((float(v) - vmin) / vspan)
            x0, x1 = px(xe[k]), px(xe[k + 1])
            y0, y1 = py(ye[i + 1]), py(ye[i])
            parts.append(
                f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" width="{_fmt(x1 - x0)}" '
                f'height="{_fmt(y1 - y0)}" fill="{fill}"/>'
            )
    for label, pts in polylines:
        coords = " ".join(f"{_fmt(px(p[0]))},{_fmt(py(p[1]))}" for p in pts)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="#ffffff" stroke-width="1.2"/>'
        )
    parts.append(
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#000000"/>'
    )
    parts.append(
        f'<text x="{_MARGIN_L + plot_w / 2:.1f}" y="{height - 8}" text-anchor="middle" '
        f'font-size="13" font-family="sans-serif">{x_label}</text>'
    )
    parts.append(
        f'<text x="14" y="{_MARGIN_T + plot_h / 2:.1f}" text-anchor="middle" font-size="13" '
        f'font-family="sans-serif" transform="rotate(-90 14 {_MARGIN_T + plot_h / 2:.1f})">'
        f"{y_label}</text>"
    )
    head = f"{title}  {annotation}" if title else annotation
    parts.append(
        f'<text x="{_MARGIN_L}" y="18" font-size="13" font-family="sans-serif">{head}</text>'
    )
    # axis extent ticks
    parts.append(
        f'<text x="{_MARGIN_L}" y="{height - _MARGIN_B + 16}" font-size="11" '
        f'font-family="sans-serif">{_fmt(x[0])}</text>'
    )
    parts.append(
        f'<text x="{_MARGIN_L + plot_w}" y="{height - _MARGIN_B + 16}" text-anchor="end" '
        f'font-size="11" font-family="sans-serif">{_fmt(x[-1])}</text>'
    )
    parts.append(
        f'<text x="{_MARGIN_L - 4}" y="{_MARGIN_T + plot_h}" text-anchor="end" font-size="11" '
        f'font-family="sans-serif">{_fmt(y[0])}</text>'
    )
    parts.append(
        f'<text x="{_MARGIN_L - 4}" y="{_MARGIN_T + 10}" text-anchor="end" font-size="11" '
        f'font-family="sans-serif">{_fmt(y[-1])}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
