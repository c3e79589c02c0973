import json
import subprocess
import sys

import pytest

from pwmirror.cli import main


def test_exit_zero_on_pass(scenario_path, capsys):
    assert main(["check", "all", str(scenario_path("torus.json"))]) == 0
    assert "[PASS] pw-polynomial" in capsys.readouterr().out


def test_exit_one_on_failure(scenario_path, capsys):
    assert main(["perverse", "oracle", str(scenario_path("failures/oracle_corrupt.json"))]) == 1
    assert "[FAIL] flag-vs-cech" in capsys.readouterr().out


def test_exit_one_on_refusal(scenario_path, capsys):
    assert main(["lg", "kkp", str(scenario_path("failures/elliptic_refusal.json"))]) == 1
    assert "[REFUSED]" in capsys.readouterr().out


@pytest.mark.parametrize("rel", ["failures/truncated.json", "failures/shape_mismatch.json", "nope.json"])
def test_exit_two_on_load_error(scenario_path, capsys, rel):
    assert main(["check", "all", str(scenario_path(rel))]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_strict_validation_flag(scenario_path, capsys):
    path = str(scenario_path("del_pezzo.json"))
    assert main(["pw", "eval", path]) == 0
    assert main(["pw", "eval", path, "--strict-validation"]) == 2


def test_command_selects_operations(scenario_path, capsys):
    path = str(scenario_path("conic_line.json"))
    assert main(["lg", "gluing", path, "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert [t["op"] for t in report["tasks"]] == ["gluing"]


def test_task_flag(scenario_path, capsys):
    path = str(scenario_path("torus.json"))
    assert main(["pw", "mirror", path, "--task", "self-mirror", "--format", "json"]) == 0
    assert [t["name"] for t in json.loads(capsys.readouterr().out)["tasks"]] == ["self-mirror"]
    assert main(["pw", "mirror", path, "--task", "missing"]) == 2


def test_timings_flag(scenario_path, capsys):
    main(["weight", "e2", str(scenario_path("p1_strata.json")), "--timings"])
    assert " ms)" in capsys.readouterr().out


def test_plot_dir(scenario_path, tmp_path, capsys):
    pytest.importorskip("matplotlib")
    assert main(["weight", "e2", str(scenario_path("nc_curves.json")), "--plot-dir", str(tmp_path)]) == 0
    pngs = sorted(p.name for p in tmp_path.glob("*.png"))
    assert len(pngs) == 4
    assert all(p.startswith("nc_curves__") for p in pngs)


def test_console_entry_point(scenario_path):
    out = subprocess.run(
        [sys.executable, "-m", "pwmirror.cli", "lg", "discriminant", str(scenario_path("conic_line.json"))],
        capture_output=True, text=True, check=False,
    )
    assert out.returncode == 0
    assert "{a^2*b = 4} ∪ {b = 0}" in out.stdout
