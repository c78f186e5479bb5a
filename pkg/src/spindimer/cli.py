"""Command-line interface: sweeps, maps, caloric products and validation.

Subcommands: spectrum, phase-diagram, thermo, entropy-map, delta-s,
isentrope, rc, validate.  Parameters come from flags or an optional JSON
config file (flags win).  Outputs are CSV, JSON or SVG; CSV and JSON of
the same run are value-identical after parsing.  Exit codes: 0 success,
1 validation failure, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import caloric, phases, scan, thermo, validate
from .errors import SpinDimerError
from .model import Fields, ModelParams, analytic_spectrum
from .render import render_heatmap_svg

_DEFAULTS = {
    "j": 1.0,
    "delta": 1.0,
    "d_anis": 0.0,
    "g1": 2.0,
    "g2": 2.0,
    "mu": 1.0,
    "b": 0.0,
    "e": 0.0,
    "t": 1.0,
    "format": "csv",
    "seed": validate.DEFAULT_SEED,
    "out": None,
    "config": None,
}

_LN_ALIASES = {"ln2": math.log(2), "ln3": math.log(3), "ln6": math.log(6)}


@dataclass
class Product:
    """One emittable table, optionally backed by a renderable grid."""

    columns: list
    rows: list
    meta: dict = field(default_factory=dict)
    grid: dict | None = None  # x, y, values, x_label, y_label, polylines


def parse_range(spec: str) -> np.ndarray:
    """Parse 'lo:hi:n' into n linearly spaced samples."""
    try:
        lo_s, hi_s, n_s = spec.split(":")
        lo, hi, n = float(lo_s), float(hi_s), int(n_s)
    except ValueError as exc:
        raise SpinDimerError(f"bad range {spec!r}, expected lo:hi:n") from exc
    if n < 2 or not hi > lo:
        raise SpinDimerError(f"range {spec!r} must be non-degenerate with n >= 2")
    return np.linspace(lo, hi, n)


def parse_level(token: str) -> float:
    token = token.strip()
    if token in _LN_ALIASES:
        return _LN_ALIASES[token]
    return float(token)


def _model_params(cfg: dict) -> ModelParams:
    return ModelParams(j=cfg["j"], delta=cfg["delta"], d=cfg["d_anis"],
                       g1=cfg["g1"], g2=cfg["g2"], mu=cfg["mu"])


def _fields(cfg: dict) -> Fields:
    return Fields(b=cfg["b"], e=cfg["e"])


# ---------------------------------------------------------------- commands


def cmd_spectrum(cfg: dict) -> dict[str, Product]:
    sp = analytic_spectrum(_model_params(cfg), _fields(cfg))
    cols = ["eps1", "eps2", "eps3", "eps4", "eps5", "eps6",
            "c1plus", "c1minus", "c2plus", "c2minus", "phi_rad"]
    row = list(sp.eps) + [sp.c1plus, sp.c1minus, sp.c2plus, sp.c2minus, sp.phi]
    return {"data": Product(columns=cols, rows=[row])}


def cmd_phase_diagram(cfg: dict) -> dict[str, Product]:
    params = _model_params(cfg)
    es = parse_range(cfg["e_range"])
    bs = parse_range(cfg["b_range"])
    if len(es) != len(bs):
        raise SpinDimerError("phase-diagram requires equal sample counts on both axes")
    labels, curves = phases.phase_diagram(
        params, (es[0], es[-1]), (bs[0], bs[-1]), resolution=len(es)
    )
    rows = [
        [float(es[k]), float(bs[i]), labels[i, k]]
        for i in range(len(bs))
        for k in range(len(es))
    ]
    grid = {
        "x": es, "y": bs, "values": labels,
        "x_label": "e_over_J", "y_label": "b_over_J",
        "polylines": [(c.kind, c.samples) for c in curves],
    }
    brows = [[c.kind, float(e), float(b)] for c in curves for e, b in c.samples]
    return {
        "data": Product(columns=["e_over_J", "b_over_J", "phase"], rows=rows, grid=grid),
        "boundaries": Product(columns=["kind", "e_over_J", "b_over_J"], rows=brows),
    }


def _sweep_axis(cfg: dict):
    has_b, has_e = cfg.get("b_range"), cfg.get("e_range")
    if bool(has_b) == bool(has_e):
        raise SpinDimerError("exactly one of --b-range / --e-range is required")
    return ("b", parse_range(has_b)) if has_b else ("e", parse_range(has_e))


def cmd_thermo(cfg: dict) -> dict[str, Product]:
    params = _model_params(cfg)
    axis, xs = _sweep_axis(cfg)
    temps = [float(v) for v in str(cfg.get("t_values") or cfg["t"]).split(",")]
    rows = []
    for t in temps:
        for x in xs:
            f = Fields(b=x, e=cfg["e"]) if axis == "b" else Fields(b=cfg["b"], e=x)
            rows.append(
                [float(x), t,
                 thermo.magnetization(params, f, t),
                 thermo.polarization(params, f, t),
                 thermo.entropy(params, f, t)]
            )
    cols = [f"{axis}_over_J", "t_over_J", "m_over_ms", "p", "s_over_kB"]
    return {"data": Product(columns=cols, rows=rows)}


def _grid_sections(grid: scan.Grid2D, levels) -> dict[str, Product]:
    rows = [
        [float(grid.x[k]), float(grid.y[i]), float(grid.values[i, k])]
        for i in range(len(grid.y))
        for k in range(len(grid.x))
    ]
    polylines = []
    sections = {}
    if levels:
        isolines = scan.extract_isolines(grid, levels)
        polylines = [(f"{p.level:g}", p.points) for p in isolines]
        sections["isolines"] = Product(
            columns=["level", grid.x_label, grid.y_label],
            rows=[[p.level, float(x), float(y)] for p in isolines for x, y in p.points],
        )
    payload = {
        "x": grid.x, "y": grid.y, "values": grid.values,
        "x_label": grid.x_label, "y_label": grid.y_label, "polylines": polylines,
    }
    main = Product(columns=[grid.x_label, grid.y_label, grid.value_label],
                   rows=rows, grid=payload)
    return {"data": main, **sections}


def _grid_resolution(cfg: dict, xs, ts):
    # --resolution overrides the per-axis sample counts of the range flags
    if cfg.get("resolution"):
        return int(cfg["resolution"])
    return (len(xs), len(ts))


def cmd_entropy_map(cfg: dict) -> dict[str, Product]:
    params = _model_params(cfg)
    axis, xs = _sweep_axis(cfg)
    ts = parse_range(cfg["t_range"])
    res = _grid_resolution(cfg, xs, ts)
    if axis == "b":
        grid = scan.entropy_map(params, cfg["e"], (xs[0], xs[-1]), (ts[0], ts[-1]), res)
    else:
        grid = scan.entropy_map_electric(params, cfg["b"], (xs[0], xs[-1]), (ts[0], ts[-1]), res)
    levels = [parse_level(v) for v in (cfg.get("levels") or "").split(",") if v.strip()]
    return _grid_sections(grid, levels)


def cmd_delta_s(cfg: dict) -> dict[str, Product]:
    params = _model_params(cfg)
    axis, xs = _sweep_axis(cfg)
    ts = parse_range(cfg["t_range"])
    res = _grid_resolution(cfg, xs, ts)
    if axis == "b":
        grid = scan.delta_s_map(params, caloric.MAGNETIC, cfg["e"],
                                (xs[0], xs[-1]), (ts[0], ts[-1]), res)
    else:
        grid = scan.delta_s_map(params, caloric.ELECTRIC, cfg["b"],
                                (xs[0], xs[-1]), (ts[0], ts[-1]), res)
    levels = [parse_level(v) for v in (cfg.get("levels") or "").split(",") if v.strip()]
    return _grid_sections(grid, levels)


def cmd_isentrope(cfg: dict) -> dict[str, Product]:
    params = _model_params(cfg)
    axis, xs = _sweep_axis(cfg)
    target = parse_level(cfg["target_s"])
    if axis == "b":
        iso = caloric.isentrope_magnetic(params, cfg["e"], target, xs)
    else:
        iso = caloric.isentrope_electric(params, cfg["b"], target, xs)
    rows = [[float(x), float(t)] for x, t in iso.samples]
    meta = {"target_s": target, "axis": axis, "fixed_field": iso.fixed_field,
            "gaps": [float(g) for g in iso.gaps]}
    return {"data": Product(columns=[f"{axis}_over_J", "t_over_J"], rows=rows, meta=meta)}


def cmd_rc(cfg: dict) -> dict[str, Product]:
    params = _model_params(cfg)
    axis, spans = _sweep_axis(cfg)
    mode = caloric.MAGNETIC if axis == "b" else caloric.ELECTRIC
    fixed = cfg["e"] if axis == "b" else cfg["b"]
    ts = parse_range(cfg.get("t_range") or "0.01:3.0:200")
    effect = (cfg.get("effect") or "conventional").upper()
    rows = []
    for span in spans:
        curve = caloric.caloric_curve(params, mode, float(span), fixed, ts)
        rc = caloric.refrigerant_capacity(curve, effect, cfg.get("fixed_t2"))
        rows.append([float(span), rc.rc_abs, rc.t1, rc.t2, rc.mode,
                     int(rc.clamped_t1), int(rc.clamped_t2)])
    cols = [f"delta_{axis}_over_J", "rc_abs", "t1_over_J", "t2_over_J",
            "effect", "clamped_t1", "clamped_t2"]
    return {"data": Product(columns=cols, rows=rows, meta={"mode": mode})}


def cmd_validate(cfg: dict) -> tuple[dict[str, Product], int]:
    report = validate.run_validation(
        sample=int(cfg.get("sample") or 200),
        seed=int(cfg["seed"]),
        tol_fd=float(cfg.get("tol_fd") or 1e-6),
    )
    print(report.format_table())
    rows = [[c.name, c.max_deviation, c.tolerance, int(c.passed)] for c in report.checks]
    prod = Product(columns=["check", "max_deviation", "tolerance", "passed"],
                   rows=rows, meta={"passed": report.passed})
    return {"data": prod}, (0 if report.passed else 1)


# ------------------------------------------------------------------ output


def _csv_text(product: Product) -> str:
    buf = []
    out = csv.writer(_ListWriter(buf), lineterminator="\n")
    out.writerow(product.columns)
    for row in product.rows:
        out.writerow(row)
    return "".join(buf)


class _ListWriter:
    def __init__(self, buf):
        self.buf = buf

    def write(self, s):
        self.buf.append(s)


def _suffixed(path: str, name: str) -> Path:
    p = Path(path)
    return p if name == "data" else p.with_name(f"{p.stem}_{name}{p.suffix}")


def emit(sections: dict[str, Product], fmt: str, out: str | None) -> None:
    if fmt == "csv":
        if out:
            for name, prod in sections.items():
                _suffixed(out, name).write_text(_csv_text(prod))
        else:
            chunks = []
            for name, prod in sections.items():
                header = f"# section: {name}\n" if len(sections) > 1 else ""
                chunks.append(header + _csv_text(prod))
            sys.stdout.write("".join(chunks))
    elif fmt == "json":
        payload = {
            name: {"columns": prod.columns, "rows": prod.rows, "meta": prod.meta}
            for name, prod in sections.items()
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        if out:
            Path(out).write_text(text)
        else:
            sys.stdout.write(text)
    elif fmt == "svg":
        main = sections["data"]
        if main.grid is None:
            raise SpinDimerError("svg output is only available for grid products")
        g = main.grid
        svg = render_heatmap_svg(
            g["x"], g["y"], g["values"], polylines=g.get("polylines", ()),
            x_label=g["x_label"], y_label=g["y_label"],
        )
        if out:
            Path(out).write_text(svg)
        else:
            sys.stdout.write(svg)
    else:
        raise SpinDimerError(f"unknown format {fmt!r}")


# ------------------------------------------------------------------ parser


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    for flag, dest, typ in [
        ("--j", "j", float), ("--delta", "delta", float), ("--d-anis", "d_anis", float),
        ("--g1", "g1", float), ("--g2", "g2", float), ("--mu", "mu", float),
        ("--b", "b", float), ("--e", "e", float), ("--t", "t", float),
        ("--seed", "seed", int), ("--out", "out", str), ("--config", "config", str),
    ]:
        common.add_argument(flag, dest=dest, type=typ, default=None)
    common.add_argument("--format", dest="format", choices=["csv", "json", "svg"], default=None)

    ranges = argparse.ArgumentParser(add_help=False)
    ranges.add_argument("--b-range", dest="b_range", default=None, metavar="lo:hi:n")
    ranges.add_argument("--e-range", dest="e_range", default=None, metavar="lo:hi:n")
    ranges.add_argument("--t-range", dest="t_range", default=None, metavar="lo:hi:n")
    ranges.add_argument("--resolution", dest="resolution", type=int, default=None)

    p = argparse.ArgumentParser(prog="spindimer", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("spectrum", parents=[common])
    sub.add_parser("phase-diagram", parents=[common, ranges])

    pt = sub.add_parser("thermo", parents=[common, ranges])
    pt.add_argument("--t-values", dest="t_values", default=None,
                    help="comma-separated temperatures (overrides --t)")

    pm = sub.add_parser("entropy-map", parents=[common, ranges])
    pm.add_argument("--levels", dest="levels", default=None,
                    help="comma-separated isoline levels (ln2/ln3/ln6 allowed)")

    pd = sub.add_parser("delta-s", parents=[common, ranges])
    pd.add_argument("--levels", dest="levels", default=None)

    pi = sub.add_parser("isentrope", parents=[common, ranges])
    pi.add_argument("--target-s", dest="target_s", required=True,
                    help="entropy level (float or ln2/ln3/ln6)")

    pr = sub.add_parser("rc", parents=[common, ranges])
    pr.add_argument("--effect", dest="effect", choices=["conventional", "inverse"], default=None)
    pr.add_argument("--fixed-t2", dest="fixed_t2", type=float, default=None)

    pv = sub.add_parser("validate", parents=[common])
    pv.add_argument("--sample", dest="sample", type=int, default=None)
    pv.add_argument("--tol-fd", dest="tol_fd", type=float, default=None)

    return p


def _merge_config(ns: argparse.Namespace) -> dict:
    cli = vars(ns)
    from_file = {}
    if cli.get("config"):
        try:
            from_file = json.loads(Path(cli["config"]).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise SpinDimerError(f"cannot read config file: {exc}") from exc
        if not isinstance(from_file, dict):
            raise SpinDimerError("config file must hold a JSON object")
    cfg = dict(_DEFAULTS)
    cfg.update({k: v for k, v in from_file.items()})
    cfg.update({k: v for k, v in cli.items() if v is not None})
    return cfg


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "phase-diagram": cmd_phase_diagram,
    "thermo": cmd_thermo,
    "entropy-map": cmd_entropy_map,
    "delta-s": cmd_delta_s,
    "isentrope": cmd_isentrope,
    "rc": cmd_rc,
}


def main(argv=None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _merge_config(ns)
        if ns.command == "validate":
            sections, code = cmd_validate(cfg)
            if cfg.get("out"):
                emit(sections, cfg["format"], cfg["out"])
            return code
        sections = _COMMANDS[ns.command](cfg)
        emit(sections, cfg["format"], cfg.get("out"))
        return 0
    except (SpinDimerError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
