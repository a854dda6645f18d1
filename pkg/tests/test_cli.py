import json

import numpy as np
import pytest

from trisol.cli import (ConfigError, RunConfig, main, parse_config_file,
                        read_field_csv, write_field_csv)
from trisol.grid import DomainSpec, Field


def test_parse_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# a comment\n"
        "preset = p1-interval\n"
        "grid.n = 31        # inline comment\n"
        "descent.grad_tol = 1e-7\n"
        "\n")
    entries = parse_config_file(str(cfg))
    assert entries == {"preset": "p1-interval", "grid.n": 31,
                       "descent.grad_tol": 1e-7}


def test_parse_config_rejects_unknown_key(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("grid.m = 10\n")
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config_file(str(cfg))


def test_parse_config_rejects_bad_value(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("grid.n = many\n")
    with pytest.raises(ConfigError, match="bad value"):
        parse_config_file(str(cfg))


def test_resolution_order(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("preset = p2-square\ngrid.nx = 21\n")
    resolved = RunConfig.resolve(str(cfg), None, None, None)
    assert resolved.preset == "p2-square"
    assert resolved.settings["grid.nx"] == 21      # file overrides preset
    assert resolved.settings["grid.ny"] == 63      # preset default kept
    spec = resolved.domain()
    assert spec.counts == (21, 63)
    # the --n flag overrides everything
    flagged = RunConfig.resolve(str(cfg), None, 15, None)
    assert flagged.domain().counts == (15, 15)


def test_unknown_preset_is_config_error():
    with pytest.raises(ConfigError, match="unknown preset"):
        RunConfig.resolve(None, "p9-torus", None, None)


def test_field_csv_roundtrip_1d(tmp_path):
    spec = DomainSpec.interval(1.0, 31)
    rng = np.random.default_rng(71)
    u = Field(spec, rng.standard_normal(spec.size))
    path = tmp_path / "u.csv"
    write_field_csv(path, spec, u)
    lines = path.read_text().splitlines()
    assert lines[0] == "x,u"
    assert len(lines) == 34          # header + boundary + 31 interior + boundary
    back = read_field_csv(path, spec)
    assert np.array_equal(back.values, u.values)


def test_field_csv_roundtrip_2d(tmp_path):
    spec = DomainSpec.rectangle(1.0, 2.0, 7, 9)
    rng = np.random.default_rng(73)
    u = Field(spec, rng.standard_normal(spec.size))
    path = tmp_path / "u.csv"
    write_field_csv(path, spec, u)
    assert path.read_text().splitlines()[0] == "x,y,u"
    back = read_field_csv(path, spec)
    assert np.array_equal(back.values, u.values)


def test_eigen_command_square(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("domain.kind = rectangle\ngrid.nx = 15\ngrid.ny = 15\n"
                   "eigen.count = 4\n")
    rc = main(["eigen", "--config", str(cfg)])
    assert rc == 0
    body = json.loads(capsys.readouterr().out)
    pi2 = np.pi**2
    assert body["eigenvalues"] == pytest.approx(
        [2 * pi2, 5 * pi2, 5 * pi2, 8 * pi2], rel=1e-12)
    assert body["pairs"][1]["mode"] == [1, 2]


def test_validate_command_passes_on_preset(capsys):
    rc = main(["validate", "--preset", "p1-interval", "--n", "31"])
    assert rc == 0
    body = json.loads(capsys.readouterr().out)
    assert body["ok"] is True


def test_validate_command_fails_on_oversized_delta(tmp_path, capsys):
    # delta = 5 pushes g(t)/t below the k-th eigenvalue near the edge
    cfg = tmp_path / "run.cfg"
    cfg.write_text("preset = p1-interval\ngrid.n = 31\nnonlinearity.delta = 5\n")
    rc = main(["validate", "--config", str(cfg)])
    assert rc == 1
    body = json.loads(capsys.readouterr().out)
    assert body["ok"] is False
    assert any(f["check"] == "sandwich_lower" for f in body["failures"])


def test_missing_config_file_is_exit_2(capsys):
    assert main(["eigen", "--config", "/nonexistent/run.cfg"]) == 2


def test_unknown_key_is_exit_2(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("volume.flux = 3\n")
    assert main(["eigen", "--config", str(cfg)]) == 2


def test_solve_command_small_interval(tmp_path, capsys):
    out = tmp_path / "out"
    rc = main(["solve", "--preset", "p1-interval", "--n", "31",
               "--out", str(out)])
    assert rc == 0
    report = json.loads((out / "report.json").read_text())
    assert report["preset"] == "p1-interval"
    assert set(report["flags"]) == {
        "condition_g", "converged", "bounds", "classical_equivalence",
        "positivity", "distinctness", "nontriviality", "morse_comparison"}
    assert all(report["flags"].values())
    assert [p["classification"] for p in report["points"]] == [
        "NegativeMin", "PositiveMin", "MountainPass", "Trivial"]
    assert [p["morse_index"] for p in report["points"]] == [0, 0, 1, 2]
    assert all(p["bounds_ok"] for p in report["points"])
    files = [p["file"] for p in report["points"]]
    assert files == ["u_minus.csv", "u_plus.csv", "u_star.csv", "u_zero.csv"]
    for name in files:
        assert (out / name).exists()
    spec = DomainSpec.interval(1.0, 31)
    u_star = read_field_csv(out / "u_star.csv", spec)
    assert np.max(np.abs(u_star.values)) > 0.1


def test_solve_command_failing_flag_is_exit_1(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("preset = p1-interval\ngrid.n = 31\nnonlinearity.delta = 5\n")
    rc = main(["solve", "--config", str(cfg), "--out", str(tmp_path / "out")])
    assert rc == 1
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    assert report["flags"]["condition_g"] is False
    assert report["flags"]["converged"] is True


def test_oracle_command_counts_branches(tmp_path, capsys):
    # resolution fine enough that the single-bump bracket stays clear of
    # the blow-up separatrix just above it
    cfg = tmp_path / "run.cfg"
    cfg.write_text("preset = p1-interval\noracle.slope_step = 0.02\n"
                   "oracle.steps = 2048\n")
    rc = main(["oracle", "--config", str(cfg)])
    assert rc == 0
    body = json.loads(capsys.readouterr().out)
    assert body["branch_count"] >= 3
    amplitudes = sorted(b["amplitude"] for b in body["branches"])
    assert amplitudes[-1] == pytest.approx(7.615, abs=0.01)


def test_oracle_command_requires_interval(capsys):
    assert main(["oracle", "--preset", "p2-square"]) == 2
