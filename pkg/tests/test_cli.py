import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from transhock import cli

PI = math.pi
C0 = math.sqrt(2.0)


def base_config(**overrides):
    cfg = {
        "gas": {"gamma": 3.0, "c0": C0},
        "geometry": {"kind": "sphere", "x_lo": PI / 6.0, "x_hi": 5.0 * PI / 6.0},
        "problem": {"x0": PI / 6.0, "x1": 5.0 * PI / 6.0, "u0": 1.2},
        "numerics": {"quadrature_panels": 400, "sweep_count": 50},
        "output": {"csv_path": "run.csv", "precision": 12},
    }
    for key, value in overrides.items():
        if isinstance(value, dict):
            cfg.setdefault(key, {}).update(value)
        else:
            cfg[key] = value
    return cfg


def write_config(tmp_path, cfg, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return path


def read_rows(path):
    data = [l for l in path.read_text().splitlines() if not l.startswith("#")]
    reader = csv.reader(io.StringIO("\n".join(data)))
    header = next(reader)
    return [dict(zip(header, row)) for row in reader]


def test_solve_reference(tmp_path, capsys):
    path = write_config(tmp_path, base_config())
    code = cli.main(["solve", "--config", str(path), "--shock", str(PI / 2.0)])
    assert code == 0
    rows = read_rows(tmp_path / "run.csv")
    assert float(rows[-1]["u"]) == pytest.approx(math.sqrt(0.56), abs=1e-9)
    assert rows[0]["regime"] == "supersonic"
    assert rows[-1]["regime"] == "subsonic"
    header = (tmp_path / "run.csv").read_text().splitlines()[0]
    assert header.startswith("#")


def test_solve_deterministic_output(tmp_path):
    path = write_config(tmp_path, base_config())
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    for out in (out_a, out_b):
        code = cli.main(
            ["solve", "--config", str(path), "--shock", "1.3", "--out-dir", str(out)]
        )
        assert code == 0
    assert (out_a / "run.csv").read_bytes() == (out_b / "run.csv").read_bytes()


def test_solve_rejects_subsonic_entry(tmp_path, capsys):
    cfg = base_config()
    cfg["problem"]["u0"] = 0.5
    path = write_config(tmp_path, cfg)
    code = cli.main(["solve", "--config", str(path), "--shock", "1.5"])
    assert code == 4
    assert "supersonic" in capsys.readouterr().err


def test_solve_rejects_bad_width_table(tmp_path, capsys):
    table = tmp_path / "widths.txt"
    table.write_text("# x n\n0.0 1.0\n1.0 -0.2\n2.0 1.0\n")
    cfg = base_config(geometry={"kind": "tabulated", "table": "widths.txt"})
    cfg["geometry"].pop("x_lo")
    cfg["geometry"].pop("x_hi")
    cfg["problem"] = {"x0": 0.0, "x1": 2.0, "u0": 1.2}
    path = write_config(tmp_path, cfg)
    code = cli.main(["solve", "--config", str(path), "--shock", "1.0"])
    assert code == 4
    assert "geometry" in capsys.readouterr().err


def test_solve_choked_exits_2_and_leaves_no_file(tmp_path, capsys):
    theta1 = 0.95 * PI
    cfg = base_config()
    cfg["geometry"]["x_hi"] = theta1
    cfg["problem"]["x1"] = theta1
    path = write_config(tmp_path, cfg)
    out = tmp_path / "out"
    code = cli.main(
        ["solve", "--config", str(path), "--shock", "1.5", "--out-dir", str(out)]
    )
    assert code == 2
    assert "choked at x" in capsys.readouterr().err
    assert not out.exists() or not list(out.iterdir())


def test_solve_no_subsonic_root_exits_3(tmp_path, capsys):
    n_crit = math.sqrt(1.12 * 1.44 / 2.0)
    b = (n_crit * (1.0 - 2e-11) - 1.0) / 2.0
    cfg = base_config(
        geometry={"kind": "linear", "a": 1.0, "b": b, "x_lo": 0.0, "x_hi": 2.0},
        problem={"x0": 0.0, "x1": 2.0, "u0": 1.2},
    )
    path = write_config(tmp_path, cfg)
    code = cli.main(["solve", "--config", str(path), "--shock", "1.0"])
    assert code == 3


def test_missing_config_exits_4(tmp_path, capsys):
    code = cli.main(["solve", "--config", str(tmp_path / "nope.json"), "--shock", "1.0"])
    assert code == 4


def test_validation_report_is_consolidated(tmp_path, capsys):
    cfg = base_config()
    cfg["problem"]["u0"] = 0.5
    cfg["problem"]["c_exit"] = 2.0
    cfg["numerics"]["sweep_count"] = 1
    path = write_config(tmp_path, cfg)
    code = cli.main(["sweep", "--config", str(path)])
    assert code == 4
    err = capsys.readouterr().err
    assert err.count("error:") >= 3


def test_sweep_reference_with_svg(tmp_path, capsys):
    cfg = base_config(output={"svg_path": "run.svg"})
    path = write_config(tmp_path, cfg)
    code = cli.main(["sweep", "--config", str(path)])
    assert code == 0
    out = capsys.readouterr().out
    assert "relative_spread" in out
    rows = read_rows(tmp_path / "run.csv")
    assert len(rows) == 50
    u1 = np.array([float(r["u1"]) for r in rows])
    assert np.max(u1) - np.min(u1) < 1e-9
    svg = (tmp_path / "run.svg").read_text()
    assert svg.startswith("<svg") and "polyline" in svg


def test_sweep_threshold_violation_exits_5(tmp_path, capsys):
    path = write_config(tmp_path, base_config())
    code = cli.main(["sweep", "--config", str(path), "--threshold", "1e-18"])
    assert code == 5
    assert (tmp_path / "run.csv").exists()  # the data is still written, complete


def test_check_reference_passes(tmp_path, capsys):
    path = write_config(tmp_path, base_config())
    code = cli.main(["check", "--config", str(path), "--shock", str(PI / 2.0)])
    assert code == 0
    rows = read_rows(tmp_path / "run.csv")
    assert rows and all(r["status"] == "pass" for r in rows)
    names = {r["check"] for r in rows}
    assert "jump_identity_residual" in names
    assert "ode_residual_ratio_1" in names


def test_check_with_coarse_ode_step_exits_6(tmp_path, capsys):
    cfg = base_config(numerics={"ode_step": 0.5})
    path = write_config(tmp_path, cfg)
    code = cli.main(["check", "--config", str(path), "--shock", str(PI / 2.0)])
    assert code == 6
    assert "check failed" in capsys.readouterr().err


def test_check_prints_solvability_verdict(tmp_path, capsys):
    u1 = math.sqrt(0.56)
    cfg = base_config()
    cfg["problem"]["c_exit"] = u1 * 1.001
    path = write_config(tmp_path, cfg)
    code = cli.main(["check", "--config", str(path), "--shock", "1.5"])
    assert code == 0  # a verdict, not an error
    out = capsys.readouterr().out
    assert "no-solution" in out
    assert f"{u1:.6f}"[:6] in out
    cfg["problem"]["c_exit"] = u1
    path = write_config(tmp_path, cfg, name="exact.json")
    code = cli.main(["check", "--config", str(path), "--shock", "1.5"])
    assert code == 0
    assert "solvability: solvable" in capsys.readouterr().out


def test_module_entry_point_subprocess(tmp_path):
    path = write_config(tmp_path, base_config())
    proc = subprocess.run(
        [sys.executable, "-m", "transhock", "sweep", "--config", str(path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "relative_spread" in proc.stdout
