"""CLI behavior: exit codes, report structure, determinism."""

import json
import math

import pytest

from triortho.cli import main
from triortho.fplinalg import format_matrix
from triortho.overhead import INTERPRETATION_NOTE
from triortho.triortho_css import build_code


def run(capsys, *argv):
    exit_code = main(list(argv))
    captured = capsys.readouterr()
    return exit_code, captured.out, captured.err


def test_construct_writes_descriptor(capsys):
    exit_code, out, _ = run(capsys, "construct", "--p", "7", "--l", "2", "--k", "1")
    assert exit_code == 0
    data = json.loads(out)
    assert data["params"] == {"n": 6, "k": 1, "d": 2, "d_verified": True}
    assert data["H1"] == [[6, 6, 6, 6, 6, 6]]
    assert data["epsilon"] == [1]


def test_construct_rejects_non_triply_even(capsys):
    exit_code, out, err = run(capsys, "construct", "--p", "7", "--l", "3", "--k", "1")
    assert exit_code == 2
    assert out == ""
    assert "3l <= p+1 failed" in err


def test_construct_reports_verified_distance(capsys):
    exit_code, out, _ = run(capsys, "construct", "--p", "13", "--l", "4", "--k", "1")
    assert exit_code == 0
    params = json.loads(out)["params"]
    assert params["d_verified"] is True
    assert params["d"] == 4


def test_construct_with_positions(capsys):
    exit_code, out, _ = run(
        capsys, "construct", "--p", "7", "--l", "2", "--k", "1", "--positions", "3"
    )
    assert exit_code == 0
    assert json.loads(out)["A"] == [3]


def test_bad_positions_is_parameter_error(capsys):
    exit_code, _, err = run(
        capsys, "construct", "--p", "7", "--l", "2", "--k", "1", "--positions", "x"
    )
    assert exit_code == 2
    assert "positions" in err


def test_budget_floor(capsys):
    exit_code, _, err = run(
        capsys, "construct", "--p", "7", "--l", "2", "--k", "1", "--budget", "100"
    )
    assert exit_code == 2
    assert "budget" in err


def test_output_file(capsys, tmp_path):
    target = tmp_path / "code.json"
    exit_code, out, _ = run(
        capsys, "construct", "--p", "7", "--l", "2", "--k", "1", "--output", str(target)
    )
    assert exit_code == 0
    assert out == ""
    assert json.loads(target.read_text())["params"]["n"] == 6


def test_output_to_directory_is_io_error(capsys, tmp_path):
    exit_code, _, err = run(
        capsys, "construct", "--p", "7", "--l", "2", "--k", "1", "--output", str(tmp_path)
    )
    assert exit_code == 3
    assert err.startswith("error:")


def test_runs_are_byte_identical(capsys):
    first = run(capsys, "construct", "--p", "11", "--l", "4", "--k", "2")
    second = run(capsys, "construct", "--p", "11", "--l", "4", "--k", "2")
    assert first == second
    first = run(capsys, "search", "--pmax", "150")
    second = run(capsys, "search", "--pmax", "150")
    assert first == second


def test_verify_roundtrip(capsys, tmp_path):
    target = tmp_path / "code.json"
    assert main(["construct", "--p", "7", "--l", "2", "--k", "1", "--output", str(target)]) == 0
    capsys.readouterr()
    exit_code, out, _ = run(capsys, "verify", "--input", str(target))
    assert exit_code == 0
    report = json.loads(out)
    assert report["passed"] is True
    names = {c["name"] for c in report["checks"]}
    assert {"tri_orthogonality", "cubic_weights", "distance", "phase_identity"} <= names


def test_verify_tampered_epsilon(capsys, tmp_path):
    target = tmp_path / "code.json"
    assert main(["construct", "--p", "7", "--l", "2", "--k", "1", "--output", str(target)]) == 0
    capsys.readouterr()
    data = json.loads(target.read_text())
    data["epsilon"][0] = 2
    target.write_text(json.dumps(data))
    exit_code, out, _ = run(capsys, "verify", "--input", str(target))
    assert exit_code == 1
    report = json.loads(out)
    assert report["passed"] is False
    failed = {c["name"] for c in report["checks"] if not c["passed"]}
    assert "cubic_weights" in failed


def test_verify_unreadable_inputs(capsys, tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text("")
    assert run(capsys, "verify", "--input", str(empty))[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "verify", "--input", str(bad))[0] == 3
    assert run(capsys, "verify", "--input", str(tmp_path / "missing.json"))[0] == 3


def test_verify_matrix_file(capsys, tmp_path):
    target = tmp_path / "H.txt"
    target.write_text(format_matrix(build_code(7, 2, 1).H))
    exit_code, out, _ = run(capsys, "verify", "--matrix", str(target))
    assert exit_code == 0
    assert json.loads(out)["passed"] is True


def test_verify_matrix_rejects_non_triorthogonal(capsys, tmp_path):
    target = tmp_path / "H.txt"
    target.write_text("7 2 3\n1 0 0\n1 1 0\n")
    exit_code, out, _ = run(capsys, "verify", "--matrix", str(target))
    assert exit_code == 1
    report = json.loads(out)
    assert report["passed"] is False
    assert report["checks"][0]["name"] == "tri_orthogonality"


def test_verify_matrix_flags_phase_identity(capsys, tmp_path):
    # Tri-orthogonal by pair/triple sums, yet the cubic identity fails on it.
    target = tmp_path / "H.txt"
    target.write_text("7 2 3\n1 1 2\n2 4 4\n")
    exit_code, out, _ = run(capsys, "verify", "--matrix", str(target))
    assert exit_code == 1
    failed = {c["name"] for c in json.loads(out)["checks"] if not c["passed"]}
    assert "phase_identity" in failed


def test_simulate_small_code(capsys):
    exit_code, out, _ = run(capsys, "simulate", "--p", "7", "--l", "2", "--k", "1")
    assert exit_code == 0
    report = json.loads(out)
    assert report["gate"] == "U_{1,3}"
    assert report["max_deviation"] < 1e-9
    assert report["failures"] == []


def test_simulate_cap_exceeded(capsys):
    exit_code, _, err = run(capsys, "simulate", "--p", "97", "--l", "29", "--k", "14")
    assert exit_code == 4
    assert "exceeds" in err


def test_simulate_qutrit_searched_code(capsys):
    exit_code, out, _ = run(capsys, "simulate", "--p", "3")
    assert exit_code == 0
    report = json.loads(out)
    assert report["gate"] == "U_{2,1}"
    assert report["max_deviation"] < 1e-9


def test_simulate_missing_shape_is_parameter_error(capsys):
    exit_code, _, err = run(capsys, "simulate", "--p", "7")
    assert exit_code == 2
    assert "--l" in err


def test_gamma_text(capsys):
    exit_code, out, _ = run(capsys, "gamma", "--n", "83", "--k", "14", "--d", "15")
    assert exit_code == 0
    assert "0.657" in out
    assert INTERPRETATION_NOTE in out


def test_gamma_json(capsys):
    exit_code, out, _ = run(
        capsys, "gamma", "--n", "83", "--k", "14", "--d", "15", "--format", "json"
    )
    assert exit_code == 0
    data = json.loads(out)
    assert abs(data["gamma"] - math.log(83 / 14) / math.log(15)) < 1e-15
    assert list(data) == sorted(data)


def test_gamma_bad_params(capsys):
    assert run(capsys, "gamma", "--n", "83", "--k", "14", "--d", "1")[0] == 2


def test_search_csv(capsys):
    exit_code, out, _ = run(capsys, "search", "--pmax", "100")
    assert exit_code == 0
    lines = out.splitlines()
    assert lines[0] == "p,l,k,n,d,gamma"
    assert lines[1].startswith("11,")
    assert any(line.startswith("97,32,23,74,9,") for line in lines)


def test_search_json_summary(capsys):
    exit_code, out, _ = run(capsys, "search", "--pmax", "100", "--format", "json")
    assert exit_code == 0
    data = json.loads(out)
    assert len(data["records"]) >= 10
    assert data["summary"]["best"]["p"] == 97
    assert math.isfinite(data["summary"]["c_fit"])


def test_search_below_family_threshold(capsys):
    exit_code, out, _ = run(capsys, "search", "--pmax", "7", "--format", "json")
    assert exit_code == 0
    data = json.loads(out)
    assert data["records"] == []
    assert data["summary"] is None


def test_help_and_missing_subcommand(capsys):
    assert run(capsys, "--help")[0] == 0
    assert run(capsys)[0] == 2


def test_entry_raises_system_exit(capsys, monkeypatch):
    import triortho.cli as cli

    monkeypatch.setattr("sys.argv", ["triortho", "gamma", "--n", "83", "--k", "14", "--d", "15"])
    with pytest.raises(SystemExit) as excinfo:
        cli.entry()
    assert excinfo.value.code == 0
    capsys.readouterr()


def test_selftest_reports_every_criterion(capsys):
    exit_code, out, _ = run(capsys, "selftest")
    lines = [line for line in out.splitlines() if line.startswith("CRITERION")]
    assert len(lines) == 10
    # Three named criteria pin distance values that exact enumeration refutes.
    assert exit_code == 1
    verdicts = {int(line.split()[1]): line.split()[2] for line in lines}
    assert verdicts[1] == "PASS"
    assert verdicts[2] == "FAIL"
    assert verdicts[3] == "FAIL"
    assert verdicts[10] == "FAIL"
    assert all(verdicts[i] == "PASS" for i in (4, 5, 6, 7, 8, 9))
