"""End-to-end tests of the command-line interface."""

from __future__ import annotations

import json
import math

import pytest

from steklov.cli import main
from steklov.perturbation import PerturbationField


def _write_config(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def test_wigner_command(capsys):
    assert main(["wigner", "2", "1", "1", "0", "0", "0"]) == 0
    out = capsys.readouterr().out
    assert "sign        1" in out
    assert "numerator   2" in out
    assert "denominator 15" in out
    assert "0.36514837167011072" in out


def test_eval_command(capsys):
    assert main(["eval", "1", "0", "0.0", "0.0"]) == 0
    assert "0.48860251190291992" in capsys.readouterr().out


def test_eval_rejects_bad_theta(capsys):
    assert main(["eval", "1", "0", "4.0", "0.0"]) == 2


def test_triple_command(capsys):
    assert main(["triple", "2", "1", "0", "1", "1"]) == 0
    out = capsys.readouterr().out
    assert "closed_form -0.126" in out
    assert "oracle" in out and "difference" in out


def test_matrix_command(tmp_path, capsys):
    config = _write_config(
        tmp_path, "m.json", {"rho": [{"p": 2, "q": 0, "A": 1.0}], "k": 1}
    )
    out_file = tmp_path / "matrix.json"
    assert main(["matrix", "--config", config, "--output", str(out_file)]) == 0
    data = json.loads(out_file.read_text())
    mat = data["groups"][0]["matrix"]
    assert mat[0][0] == pytest.approx(0.504626504404032, abs=1e-14)
    assert mat[1][1] == pytest.approx(-1.009253008808064, abs=1e-14)
    # emitted rho parses back to the identical field
    assert PerturbationField.from_entries(data["rho"]) == PerturbationField({(2, 0): 1.0})


def test_perturb_command(tmp_path):
    config = _write_config(
        tmp_path, "p.json", {"rho": [{"p": 0, "q": 0, "A": 1.0}], "k": [1, 2]}
    )
    out_file = tmp_path / "result.json"
    assert main(["perturb", "--config", config, "--output", str(out_file)]) == 0
    data = json.loads(out_file.read_text())
    assert [g["k"] for g in data["groups"]] == [1, 2]
    for group in data["groups"]:
        k = group["k"]
        assert len(group["slopes"]) == 2 * k + 1
        assert len(group["vectors"]) == 2 * k + 1
        for slope in group["slopes"]:
            assert slope == pytest.approx(-k / math.sqrt(4 * math.pi), abs=1e-12)
        for norm_slope in group["normalized_slopes"]:
            assert abs(norm_slope) < 1e-12


def test_sweep_row_counts_and_values(tmp_path, capsys):
    config = _write_config(
        tmp_path,
        "s.json",
        {"pairs": [[2, 0]], "k": [1, 3], "eps_grid": [-0.1, 0.1, 11], "format": "csv"},
    )
    outdir = tmp_path / "out"
    assert main(["sweep", "--config", config, "--output", str(outdir)]) == 0
    lines = (outdir / "sweep.csv").read_text().strip().splitlines()
    assert lines[0] == "p,q,k,branch,slope,normalized_slope"
    assert len(lines) == 1 + 3 + 5 + 7
    k1_slopes = sorted(float(line.split(",")[4]) for line in lines[1:4])
    assert k1_slopes[0] == pytest.approx(-1.009253008808064, abs=1e-12)
    assert k1_slopes[1] == pytest.approx(0.504626504404032, abs=1e-12)


def test_sweep_zero_slope_cases(tmp_path):
    config = _write_config(
        tmp_path,
        "s.json",
        {"pairs": [[1, 0], [4, 2]], "k": 1, "format": "csv"},
    )
    outdir = tmp_path / "out"
    assert main(["sweep", "--config", config, "--output", str(outdir)]) == 0
    for line in (outdir / "sweep.csv").read_text().strip().splitlines()[1:]:
        assert float(line.split(",")[4]) == 0.0


def test_sweep_svg_writes_figures_alongside_csv(tmp_path):
    config = _write_config(
        tmp_path,
        "s.json",
        {"pairs": [[2, 0]], "k": [1, 2], "eps_grid": [-0.1, 0.1, 5], "format": "svg"},
    )
    outdir = tmp_path / "out"
    assert main(["sweep", "--config", config, "--output", str(outdir)]) == 0
    assert (outdir / "sweep.csv").exists()
    assert (outdir / "fan_p2_q0_k1.svg").exists()
    assert (outdir / "fan_p2_q0_k2.svg").exists()


def test_sweep_deterministic_output(tmp_path):
    config = _write_config(
        tmp_path,
        "s.json",
        {"pairs": [[2, 0], [3, 1]], "k": [1, 2], "format": "csv"},
    )
    first = tmp_path / "a"
    second = tmp_path / "b"
    assert main(["sweep", "--config", config, "--output", str(first)]) == 0
    assert main(["sweep", "--config", config, "--output", str(second)]) == 0
    assert (first / "sweep.csv").read_bytes() == (second / "sweep.csv").read_bytes()


def test_sweep_json_format(tmp_path):
    config = _write_config(
        tmp_path, "s.json", {"pairs": [[2, 0]], "k": 1, "format": "json"}
    )
    outdir = tmp_path / "out"
    assert main(["sweep", "--config", config, "--output", str(outdir)]) == 0
    rows = json.loads((outdir / "sweep.json").read_text())
    assert len(rows) == 3
    assert {row["branch"] for row in rows} == {0, 1, 2}


def test_solve_command(tmp_path):
    config = _write_config(
        tmp_path,
        "solve.json",
        {"rho": [], "l_max": 4, "rule_degree": 16, "eps": 0.0},
    )
    out_file = tmp_path / "spectrum.json"
    assert main(["solve", "--config", config, "--output", str(out_file)]) == 0
    data = json.loads(out_file.read_text())
    assert data["eigenvalues"][0] == pytest.approx(0.0, abs=1e-10)
    assert data["eigenvalues"][1] == pytest.approx(1.0, abs=1e-10)


def test_validate_command(tmp_path, monkeypatch):
    monkeypatch.setenv("STEKLOV_SEED", "3")
    out_file = tmp_path / "report.json"
    assert main(["validate", "--output", str(out_file)]) == 0
    report = json.loads(out_file.read_text())
    assert report["passed"] is True
    assert {s["suite"] for s in report["suites"]} == {
        "wigner_symmetry",
        "triple_product",
        "trace_zero",
        "stationarity_sign",
        "corollary_screen",
    }


def test_corrupted_config_exits_2(tmp_path, capsys):
    config = _write_config(
        tmp_path, "bad.json", {"rho": [{"p": 2, "q": 5, "A": 1.0}], "k": 1}
    )
    assert main(["perturb", "--config", config]) == 2
    assert "config error" in capsys.readouterr().err


def test_missing_config_exits_2(tmp_path):
    assert main(["perturb", "--config", str(tmp_path / "nope.json")]) == 2


def test_bad_k_range_exits_2(tmp_path):
    config = _write_config(
        tmp_path, "bad.json", {"rho": [{"p": 2, "q": 0, "A": 1.0}], "k": [3, 1]}
    )
    assert main(["perturb", "--config", config]) == 2


def test_solver_rule_degree_guard_exits_2(tmp_path):
    config = _write_config(
        tmp_path,
        "solve.json",
        {"rho": [{"p": 2, "q": 0, "A": 1.0}], "l_max": 10, "rule_degree": 8},
    )
    assert main(["solve", "--config", config]) == 2
