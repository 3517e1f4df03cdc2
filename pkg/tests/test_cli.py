import json
import subprocess
import sys

import pytest

from mimo_noma import cli
from mimo_noma.experiments import read_table


def run(args, capsys):
    code = cli.main(args)
    return code, capsys.readouterr()


def test_fig1_stdout(capsys):
    code, out = run(["fig1"], capsys)
    assert code == 0
    lines = out.out.splitlines()
    assert len(lines) == 202
    assert lines[0].startswith("oma_alpha2,")


def test_out_writes_data_and_script(tmp_path, capsys):
    path = tmp_path / "sweep.json"
    code, _ = run(["rho-sweep", "--format", "json", "--out", str(path)], capsys)
    assert code == 0
    assert len(json.loads(path.read_text())) == 21
    assert (tmp_path / "sweep_plot.py").exists()


def test_claims_logged(caplog, capsys):
    assert cli.main(["rho-sweep", "--rho-range", "0:10:5", "-v"]) == 0
    messages = {r.getMessage(): r.levelname for r in caplog.records}
    assert messages["[FAIL] R2: NOMA4 above NOMA3, OMA, OMA-equal (worst margin -3.117e-05)"] \
        == "WARNING"
    assert any(m.startswith("[PASS] R1(NOMA4) = R1(OMA)") and lvl == "INFO"
               for m, lvl in messages.items())


def test_verify_exit_zero(capsys):
    code, out = run(["verify", "--trials", "30"], capsys)
    assert code == 0
    assert out.out.count("[PASS]") == 6


def test_verify_failure_exit_one(monkeypatch, capsys):
    from mimo_noma.experiments import SuiteResult, VerifyReport
    monkeypatch.setattr(cli, "verify",
                        lambda cfg: VerifyReport([SuiteResult("x", 1, 1, {})]))
    code, out = run(["verify"], capsys)
    assert code == 1
    assert "[FAIL] x" in out.out


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["fig1", "--grid", "many"],
    ["fig1", "--format", "xml"],
    ["fig1", "--gains", "0.1"],
    ["rho-sweep", "--rho-range", "0:40"],
    ["fig1", "--config", "/nonexistent.ini"],
    ["montecarlo", "--clusters", "4", "--antennas", "2"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_unwritable_out(tmp_path, capsys):
    code, out = run(["fig1", "--out", str(tmp_path / "no" / "f.csv")], capsys)
    assert code == 2
    assert "mimo-noma:" in out.err


def test_config_and_flag_precedence(tmp_path, capsys):
    ini = tmp_path / "run.ini"
    out = tmp_path / "f.csv"
    ini.write_text(f"[mimo_noma]\ngrid = 11\nrho-db = 20\nout = {out}\n")
    assert cli.main(["fig1", "--config", str(ini)]) == 0
    assert len(read_table(out)) == 11
    assert cli.main(["fig1", "--config", str(ini), "--grid", "5"]) == 0
    assert len(read_table(out)) == 5


def test_config_rejects_unknown_key(tmp_path, capsys):
    ini = tmp_path / "run.ini"
    ini.write_text("[mimo_noma]\ncolour = blue\n")
    with pytest.raises(SystemExit) as exc:
        cli.main(["fig1", "--config", str(ini)])
    assert exc.value.code == 2


def test_montecarlo_flags(tmp_path, capsys):
    path = tmp_path / "mc.csv"
    code, _ = run(["montecarlo", "--trials", "4", "--rho-range", "0:20:10", "--seed", "3",
                   "--workers", "2", "--out", str(path)], capsys)
    assert code == 0
    table = read_table(path)
    assert len(table) == 3
    assert table.column("seed")[0] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mimo_noma", "fig1", "--grid", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert len(proc.stdout.splitlines()) == 4
