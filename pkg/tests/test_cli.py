import csv
import json
import math
import io

import numpy as np
import pytest
from numpy.testing import assert_allclose

from spindimer.cli import main, parse_level, parse_range
from spindimer.errors import SpinDimerError


def run_cli(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_parse_range():
    assert_allclose(parse_range("0:1:5"), np.linspace(0, 1, 5))
    for bad in ("0:1", "1:0:5", "0:1:1", "a:b:c"):
        with pytest.raises(SpinDimerError):
            parse_range(bad)


def test_parse_level_aliases():
    assert parse_level("ln2") == math.log(2)
    assert parse_level(" ln6 ") == math.log(6)
    assert parse_level("0.25") == 0.25


def test_spectrum_csv(capsys):
    code, out, err = run_cli(capsys, "spectrum", "--b", "0.0", "--e", "0.0")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1
    eps = sorted(float(rows[0][f"eps{k}"]) for k in range(1, 7))
    assert_allclose(eps, [-1, -1, 0.5, 0.5, 0.5, 0.5], atol=1e-12)


def test_spectrum_json_matches_csv(capsys):
    argv = ["spectrum", "--b", "0.4", "--e", "0.3", "--d-anis", "-0.2"]
    _, out_csv, _ = run_cli(capsys, *argv, "--format", "csv")
    _, out_json, _ = run_cli(capsys, *argv, "--format", "json")
    row = next(csv.DictReader(io.StringIO(out_csv)))
    payload = json.loads(out_json)["data"]
    jrow = dict(zip(payload["columns"], payload["rows"][0]))
    for k, v in row.items():
        assert_allclose(float(v), float(jrow[k]), rtol=1e-15)


def test_thermo_sweep(capsys):
    code, out, _ = run_cli(
        capsys, "thermo", "--b-range", "0:2:9", "--t-values", "0.1,1.0"
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 18
    first = rows[0]
    assert float(first["b_over_J"]) == 0.0
    assert abs(float(first["m_over_ms"])) < 1e-12


def test_thermo_requires_one_axis(capsys):
    code, _, err = run_cli(capsys, "thermo")
    assert code == 2
    assert "b-range" in err or "e-range" in err
    code, _, _ = run_cli(capsys, "thermo", "--b-range", "0:1:5", "--e-range", "0:1:5")
    assert code == 2


def test_phase_diagram_sections(capsys):
    code, out, _ = run_cli(
        capsys, "phase-diagram", "--e-range", "0:0.5:11", "--b-range", "0:1.5:11",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"boundaries", "data"}
    phases = {r[2] for r in payload["data"]["rows"]}
    assert "QF+" in phases and "F+" in phases
    kinds = {r[0] for r in payload["boundaries"]["rows"]}
    assert "QFP_FP" in kinds


def test_phase_diagram_needs_equal_counts(capsys):
    code, _, err = run_cli(
        capsys, "phase-diagram", "--e-range", "0:1:5", "--b-range", "0:1:7"
    )
    assert code == 2


def test_entropy_map_with_isolines(capsys):
    code, out, _ = run_cli(
        capsys, "entropy-map", "--b-range", "0:1.5:31", "--t-range", "0.02:1.5:31",
        "--levels", "ln2", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"data", "isolines"}
    assert len(payload["data"]["rows"]) == 31 * 31
    assert payload["isolines"]["rows"]


def test_delta_s_map(capsys):
    code, out, _ = run_cli(
        capsys, "delta-s", "--b-range", "0:2:11", "--t-range", "0.05:2:9",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    vals = [r[2] for r in payload["data"]["rows"]]
    assert min(vals) > -1e-12  # isotropic defaults: conventional only


def test_isentrope(capsys):
    code, out, _ = run_cli(
        capsys, "isentrope", "--b-range", "0:1.5:16", "--target-s", "ln2",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)["data"]
    assert payload["meta"]["axis"] == "b"
    assert len(payload["rows"]) == 16


def test_rc_command(capsys):
    code, out, _ = run_cli(
        capsys, "rc", "--b-range", "1:2:3", "--t-range", "0.02:3:120"
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3
    rcs = [float(r["rc_abs"]) for r in rows]
    assert rcs[0] < rcs[1] < rcs[2]


def test_svg_output(tmp_path, capsys):
    out = tmp_path / "map.svg"
    code, _, _ = run_cli(
        capsys, "entropy-map", "--b-range", "0:1:11", "--t-range", "0.05:1:11",
        "--format", "svg", "--out", str(out),
    )
    assert code == 0
    text = out.read_text()
    assert text.startswith("<svg") or "<svg" in text
    assert "</svg>" in text


def test_svg_rejected_for_scalar_product(capsys):
    code, _, err = run_cli(capsys, "spectrum", "--format", "svg")
    assert code == 2


def test_csv_files_per_section(tmp_path, capsys):
    out = tmp_path / "pd.csv"
    code, _, _ = run_cli(
        capsys, "phase-diagram", "--e-range", "0:0.5:7", "--b-range", "0:1.5:7",
        "--out", str(out),
    )
    assert code == 0
    assert out.exists()
    assert (tmp_path / "pd_boundaries.csv").exists()


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"g1": 2.0, "g2": 0.8, "b": 0.4}))
    _, out_cfg, _ = run_cli(capsys, "spectrum", "--config", str(cfg))
    _, out_direct, _ = run_cli(capsys, "spectrum", "--g1", "2", "--g2", "0.8", "--b", "0.4")
    assert out_cfg == out_direct
    # flag wins over file
    _, out_override, _ = run_cli(capsys, "spectrum", "--config", str(cfg), "--b", "0.9")
    assert out_override != out_cfg


def test_bad_config_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    code, _, err = run_cli(capsys, "spectrum", "--config", str(bad))
    assert code == 2
    assert "config" in err


def test_validate_small_sample(capsys):
    code, out, _ = run_cli(capsys, "validate", "--sample", "10")
    assert code == 0
    assert "pass" in out.lower() or "ok" in out.lower()
