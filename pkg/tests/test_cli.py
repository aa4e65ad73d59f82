import json
import os

import pytest

from bousskit.cli import main


@pytest.fixture()
def p0file(tmp_path):
    path = tmp_path / "p0.json"
    path.write_text(json.dumps({"a": 2, "b": 1, "c": 1, "d": 1, "p": 1,
                                "omega": 3.0, "nmax": 16}))
    return str(path)


@pytest.fixture()
def badfile(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"a": 2, "b": 1, "c": 1, "d": 1, "p": 1,
                                "omega": 2.0, "nmax": 16}))
    return str(path)


def test_regime_subcommand(p0file, tmp_path, capsys):
    out = str(tmp_path / "out")
    assert main(["regime", "--params", p0file, "--out", out]) == 0
    payload = json.loads((tmp_path / "out" / "regime.json").read_text())
    assert payload["omega0_sq"] == 2.0
    assert payload["omega1_sq"] == 6.0
    assert payload["omega2_sq"] == 3.0
    assert payload["valid"] is True
    lines = (tmp_path / "out" / "regime.csv").read_text().strip().split("\n")
    assert len(lines) == 18  # header + n = 0..16


def test_regime_gate_exit_code(badfile, tmp_path):
    assert main(["regime", "--params", badfile, "--out", str(tmp_path)]) == 2
    assert main(["verify", "--params", badfile, "--out", str(tmp_path)]) == 2


def test_usage_error_exit_code():
    assert main([]) == 1
    assert main(["no-such-command"]) == 1


def test_spectrum_rows_and_lambda1(p0file, tmp_path):
    out = str(tmp_path / "s")
    assert main(["spectrum", "--params", p0file, "--out", out]) == 0
    lines = (tmp_path / "s" / "spectrum.csv").read_text().strip().split("\n")
    assert len(lines) == 17  # header + n = 1..16
    row1 = lines[1].split(",")
    assert abs(float(row1[1]) - (-3.9155)) < 1e-3


def test_symbol_table(p0file, tmp_path):
    out = str(tmp_path / "sym")
    assert main(["symbol", "--params", p0file, "--out", out]) == 0
    lines = (tmp_path / "sym" / "symbol.csv").read_text().strip().split("\n")
    assert lines[0] == "n,sigma"
    assert abs(float(lines[1].split(",")[1]) - 3.9155) < 1e-3
    assert all(float(l.split(",")[1]) > 0 for l in lines[1:])


def test_evolve_writes_trajectory(p0file, tmp_path):
    out = str(tmp_path / "ev")
    code = main(["evolve", "--params", p0file, "--out", out, "--y0", "0",
                 "--y1", "0.02", "--dt", "1e-3", "--amp", "1e-2",
                 "--lp-iters", "1", "--store-every", "5",
                 "--dump-y", "0.0"])
    assert code == 0
    text = (tmp_path / "ev" / "trajectory.csv").read_text()
    lines = text.strip().split("\n")
    assert lines[0].startswith("y,abs_w1_0,abs_w2_0")
    assert len(lines) >= 4
    dumps = [f for f in os.listdir(out) if f.startswith("state_y")]
    assert len(dumps) == 1


def test_outputs_byte_identical(p0file, tmp_path):
    outs = []
    for tag in ("a", "b"):
        out = str(tmp_path / tag)
        code = main(["evolve", "--params", p0file, "--out", out, "--y0", "0",
                     "--y1", "0.01", "--dt", "1e-3", "--amp", "1e-2",
                     "--lp-iters", "1", "--store-every", "5", "--seed", "0"])
        assert code == 0
        outs.append((tmp_path / tag / "trajectory.csv").read_bytes())
    assert outs[0] == outs[1]


def test_nmax_override(p0file, tmp_path):
    out = str(tmp_path / "o")
    assert main(["spectrum", "--params", p0file, "--out", out, "--nmax", "8"]) == 0
    lines = (tmp_path / "o" / "spectrum.csv").read_text().strip().split("\n")
    assert len(lines) == 9
