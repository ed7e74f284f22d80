import json
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from critsys.cli import dumps17, main
from critsys.spectral import load_field

DATA = Path(__file__).parent / "data"


def write_params(tmp_path, **fields):
    base = {"n": 3, "s": 0.5, "alpha": 1.5, "mu1": 1.0, "mu2": 1.0,
            "gamma": 1.0}
    base.update(fields)
    path = tmp_path / "params.json"
    path.write_text(json.dumps(base))
    return str(path)


def run_main(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# json emission

def test_dumps17_float_width():
    text = dumps17({"v": 8.0 / 9.0, "w": [1.25, True, None], "n": 3})
    assert "0.88888888888888884" in text
    assert '"w": [1.25, true, null]' in text
    assert json.loads(text)["v"] == 8.0 / 9.0  # lossless round trip


def test_classify_command(tmp_path, capsys):
    params = write_params(tmp_path, gamma=-1.0)
    code, out, _ = run_main(capsys, "classify", "--params", params)
    assert code == 0
    payload = json.loads(out)
    assert payload["label"] == "NEGATIVE_GAMMA"
    assert payload["gammaB"] == 1.0
    assert payload["params"]["beta"] == 1.5  # full resolved provenance


def test_classify_flags_override_file(tmp_path, capsys):
    params = write_params(tmp_path, gamma=-1.0)
    code, out, _ = run_main(capsys, "classify", "--params", params,
                            "--gamma", "0.5")
    assert code == 0
    assert json.loads(out)["label"] == "SMALL_GAMMA_CANDIDATE"


def test_classify_flags_only(capsys):
    code, out, _ = run_main(capsys, "classify", "--n", "1", "--s", "0.4",
                            "--alpha", "5.0", "--mu1", "1", "--mu2", "1",
                            "--gamma", "-2.0")
    assert code == 0
    assert json.loads(out)["label"] == "NEGATIVE_GAMMA"


def test_solve_command(tmp_path, capsys):
    params = write_params(tmp_path, gamma=2.0)
    code, out, _ = run_main(capsys, "solve", "--params", params)
    assert code == 0
    payload = json.loads(out)
    assert payload["method"] == "bisection"
    assert payload["k0"] == pytest.approx(0.25, abs=1e-10)
    assert payload["res1"] <= 1e-12 and payload["res2"] <= 1e-12


def test_solve_ratio_method(tmp_path, capsys):
    params = write_params(tmp_path, n=1, s=0.4, alpha=5.0, gamma=4.0)
    code, out, _ = run_main(capsys, "solve", "--params", params,
                            "--method", "ratio")
    assert code == 0
    payload = json.loads(out)
    assert payload["method"] == "ratio"
    assert payload["k0"] == pytest.approx(3.0 ** -0.25, abs=1e-9)


def test_solve_with_domination_check(tmp_path, capsys):
    params = write_params(tmp_path, n=1, s=0.4, alpha=5.0, gamma=8.0)
    code, out, _ = run_main(capsys, "--seed", "11", "solve", "--params",
                            params, "--check-domination", "2000")
    assert code == 0
    payload = json.loads(out)
    assert payload["domination"]["violations"] == 0
    assert payload["domination"]["feasible"] > 0
    # determinism under the same seed
    code2, out2, _ = run_main(capsys, "--seed", "11", "solve", "--params",
                              params, "--check-domination", "2000")
    assert out2 == out


def test_solve_domain_error_exit_code(tmp_path, capsys):
    params = write_params(tmp_path, gamma=-1.0)
    code, out, err = run_main(capsys, "solve", "--params", params)
    assert code == 1
    payload = json.loads(err)
    assert payload["error"] == "domain"
    assert "constraint" in payload


def test_solve_uncovered_regime_exit_code(tmp_path, capsys):
    # mixed exponents: no solvable hypothesis applies
    params = write_params(tmp_path, n=5, s=0.9, alpha=2.05, gamma=1.0)
    code, _, err = run_main(capsys, "solve", "--params", params)
    assert code == 1
    assert json.loads(err)["error"] == "domain"


def test_numerical_error_exit_code(tmp_path, capsys):
    # far above the coupling bound the ratio reduction loses monotonicity
    params = write_params(tmp_path, n=1, s=0.4, alpha=5.0, gamma=80.0)
    code, _, err = run_main(capsys, "solve", "--params", params,
                            "--method", "ratio")
    assert code == 2
    assert json.loads(err)["error"] == "monotonicity-violation"


def test_usage_error_exit_code(capsys):
    assert main(["solve", "--no-such-flag"]) == 64
    assert main(["not-a-command"]) == 64


def test_energy_command(tmp_path, capsys):
    params = write_params(tmp_path, mu2=2.0, gamma=-1.0)
    code, out, _ = run_main(capsys, "energy", "--params", params)
    assert code == 0
    payload = json.loads(out)
    assert payload["dimensionless_A"] == 1.25
    assert payload["attained"] is False
    code, out, _ = run_main(capsys, "energy", "--params", params,
                            "--Ss", "2.7")
    assert json.loads(out)["absolute_A"] == pytest.approx(
        1.25 / 6.0 * 2.7 ** 3, rel=1e-14)


def test_energy_attained_includes_minimizer(tmp_path, capsys):
    params = write_params(tmp_path, gamma=2.0)
    code, out, _ = run_main(capsys, "energy", "--params", params)
    assert code == 0
    payload = json.loads(out)
    assert payload["attained"] is True
    assert payload["dimensionless_A"] == pytest.approx(0.5, abs=1e-10)
    assert len(payload["minimizer_coeffs"]) == 2


def test_energy_regime_mismatch(tmp_path, capsys):
    params = write_params(tmp_path, gamma=0.5)
    code, _, err = run_main(capsys, "energy", "--params", params)
    assert code == 1
    assert json.loads(err)["error"] == "regime-mismatch"


def test_sobolev_command(capsys):
    code, out, _ = run_main(capsys, "sobolev", "--n", "3", "--s", "0.5",
                            "--L", "15", "--N", "32")
    assert code == 0
    payload = json.loads(out)
    assert payload["closed_form"] == pytest.approx(2.70257, abs=1e-4)
    assert payload["rel_gap"] <= 0.08  # cheap grid; acceptance runs 1%
    assert payload["est_error"] >= 0.0


def test_verify_command_with_dump(tmp_path, capsys):
    params = write_params(tmp_path, gamma=1.0)
    dump = tmp_path / "field.bin"
    code, out, _ = run_main(capsys, "verify", "--params", params,
                            "--L", "15", "--N", "32", "--eps", "1.0",
                            "--dump", str(dump))
    assert code == 0
    payload = json.loads(out)
    assert payload["single"]["rel_l2_core"] <= 0.5
    assert payload["system_eq1"]["rel_l2_core"] == pytest.approx(
        payload["single"]["rel_l2_core"], rel=1e-9)
    assert payload["k0"] == pytest.approx(4.0 / 9.0, abs=1e-4)
    field, s_back = load_field(str(dump))
    assert s_back == 0.5 and field.N == 32
    assert np.all(field.values > 0.0)


def test_verify_negative_gamma_single_only(tmp_path, capsys):
    params = write_params(tmp_path, gamma=-1.0)
    code, out, _ = run_main(capsys, "verify", "--params", params,
                            "--L", "15", "--N", "32")
    assert code == 0
    payload = json.loads(out)
    assert "single" in payload and "system_eq1" not in payload


def test_perturb_command(tmp_path, capsys):
    params = write_params(tmp_path, mu2=2.0, gamma=-1.0)
    code, out, _ = run_main(capsys, "perturb", "--params", params,
                            "--R", "6,12", "--eps", "1.0", "--N", "64")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert len(rows) == 2
    assert rows[0]["gap"] > rows[1]["gap"] > 0.0


def test_perturb_wrong_sign_exit(tmp_path, capsys):
    params = write_params(tmp_path, gamma=0.5)
    code, _, err = run_main(capsys, "perturb", "--params", params,
                            "--R", "6", "--N", "64")
    assert code == 1


def test_continue_command_csv(tmp_path, capsys):
    params = write_params(tmp_path, gamma=0.1)
    out_path = tmp_path / "branch.csv"
    code, _, _ = run_main(capsys, "continue", "--params", params,
                          "--gamma-max", "0.3", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "gamma,k,l,k_plus_l,ordering_ok"
    first = lines[1].split(",")
    assert float(first[0]) == 0.0 and float(first[1]) == 1.0
    last = lines[-1].split(",")
    closed = (1.0 + 0.3 / 2.0) ** -2.0
    assert float(last[1]) == pytest.approx(closed, abs=1e-9)
    assert last[4] == "true"


def test_sweep_matches_golden_file(tmp_path, capsys):
    out_path = tmp_path / "sweep.csv"
    code, _, _ = run_main(capsys, "sweep", "--grid",
                          str(DATA / "sweep_grid.json"),
                          "--out", str(out_path))
    assert code == 0
    assert out_path.read_text() == (DATA / "golden_sweep.csv").read_text()


def test_sweep_is_deterministic_and_thread_capped(tmp_path, capsys):
    os.environ["CRITSYS_THREADS"] = "1"
    try:
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        run_main(capsys, "sweep", "--grid", str(DATA / "sweep_grid.json"),
                 "--out", str(a))
        run_main(capsys, "sweep", "--grid", str(DATA / "sweep_grid.json"),
                 "--out", str(b))
        assert a.read_text() == b.read_text()
    finally:
        del os.environ["CRITSYS_THREADS"]


def test_sweep_records_invalid_points(tmp_path, capsys):
    grid = {"axes": {"s": [0.5, 1.5]},
            "fixed": {"n": 3, "alpha": 1.5, "mu1": 1.0, "mu2": 1.0,
                      "gamma": -1.0}}
    grid_path = tmp_path / "grid.json"
    grid_path.write_text(json.dumps(grid))
    code, out, _ = run_main(capsys, "sweep", "--grid", str(grid_path))
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3
    assert "NEGATIVE_GAMMA" in lines[1]
    assert "INVALID" in lines[2] and "s out of range" in lines[2]


def test_sweep_cap(tmp_path, capsys):
    grid = {"axes": {"gamma": list(range(1001)), "mu1": list(range(1, 1002))},
            "fixed": {"n": 3, "s": 0.5, "alpha": 1.5, "mu2": 1.0}}
    grid_path = tmp_path / "grid.json"
    grid_path.write_text(json.dumps(grid))
    code, _, err = run_main(capsys, "sweep", "--grid", str(grid_path))
    assert code == 1
    assert "cap" in json.loads(err)["message"]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "critsys.cli", "classify", "--n", "3", "--s",
         "0.5", "--alpha", "1.5", "--mu1", "1", "--mu2", "1", "--gamma", "2"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["label"] == "ATTAINED_B"
