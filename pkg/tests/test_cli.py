"""End-to-end tests of the command line interface (in process)."""

import json
import math

import numpy as np
import pytest

from zitterlab import cli
from zitterlab.reporting import validate_report


def run(argv):
    return cli.main(argv)


def load(path):
    report = json.loads(path.read_text())
    validate_report(report)
    return report


def test_verify_subset_passes(tmp_path):
    out = tmp_path / "o"
    code = run(["--out", str(out), "verify",
                "--checks", "constants,algebra.exponential"])
    assert code == 0
    report = load(out / "verify_report.json")
    names = [c["name"] for c in report["checks"]]
    assert names == [
        "constants.alpha_consistency",
        "constants.zb_frequency_si",
        "constants.zb_amplitude_si",
        "algebra.exponential",
    ]
    assert report["overall_pass"] is True


def test_verify_empty_selection_is_usage_error(tmp_path, capsys):
    assert run(["--out", str(tmp_path / "o"), "verify", "--checks", ""]) == 2
    assert "no checks selected" in capsys.readouterr().err


def test_verify_unknown_prefix_lists_known_checks(tmp_path, capsys):
    assert run(["--out", str(tmp_path / "o"), "verify",
                "--checks", "nonsense"]) == 2
    err = capsys.readouterr().err
    assert "fock.car" in err


def test_verify_fault_injection_fails(tmp_path, capsys):
    out = tmp_path / "o"
    code = run(["--out", str(out), "verify", "--inject-alpha-fault"])
    assert code == 1
    report = load(out / "verify_report.json")
    assert report["overall_pass"] is False
    failed = [c["name"] for c in report["checks"] if c["status"] == "fail"]
    assert "perturbation.g_factor" in failed


def test_simulate_outputs(tmp_path):
    out = tmp_path / "sim"
    code = run(["--out", str(out), "simulate",
                "--n-nodes", "33", "--n-samples", "256", "--periods", "6"])
    assert code == 0
    report = load(out / "summary.json")
    assert report["command"] == "simulate"
    sig = report["signature"]
    # rest-frame 50/50 packet: frequency 2 m c^2 / hbar = 2, amplitude
    # about hbar / 2 m c = 0.5 in natural units
    assert abs(sig["frequency"] - 2.0) < 0.02 * 2.0
    assert abs(sig["amplitude"] - 0.5) < 0.05 * 0.5
    csv = (out / "trajectory.csv").read_text().splitlines()
    assert csv[0] == "t,x_mean,v_mean,pos_weight,norm"
    assert len(csv) == 1 + 256


def test_simulate_si_frequency(tmp_path):
    out = tmp_path / "sim"
    code = run(["--out", str(out), "--units", "si", "simulate",
                "--n-nodes", "33", "--n-samples", "256", "--periods", "6"])
    assert code == 0
    sig = load(out / "summary.json")["signature"]
    assert abs(sig["frequency"] - 1.552688142210022e21) < 0.01 * 1.552688142210022e21
    assert abs(sig["amplitude"] - 1.9307963386214167e-13) < 0.05 * 1.9307963386214167e-13


def test_simulate_reports_are_byte_identical(tmp_path):
    out = tmp_path / "same"
    argv = ["--out", str(out), "simulate", "--n-nodes", "17",
            "--n-samples", "128"]
    assert run(argv) == 0
    first = (out / "summary.json").read_bytes(), (out / "trajectory.csv").read_bytes()
    assert run(argv) == 0
    second = (out / "summary.json").read_bytes(), (out / "trajectory.csv").read_bytes()
    assert first == second


def test_perturb_report(tmp_path):
    out = tmp_path / "p"
    assert run(["--out", str(out), "perturb"]) == 0
    report = load(out / "perturb_report.json")
    rows = {row["quantity"]: row for row in report["rows"]}
    assert rows["g_factor"]["natural"] == pytest.approx(2.002322819465777,
                                                        abs=1e-12)
    assert rows["loop_current"]["si"] == pytest.approx(19.796333704301034,
                                                       rel=1e-9)
    assert rows["delta_b"]["si"] == pytest.approx(10252937.256558644,
                                                  rel=1e-9)
    assert rows["delta_moment"]["si"] == pytest.approx(1.0770925567882854e-26,
                                                       rel=1e-9)
    assert rows["first_order_energy"]["natural"] == 0.0
    assert report["overall_pass"] is True


def test_spectrum_operators(tmp_path):
    cases = {
        "alpha_x": (-1.0, -1.0, 1.0, 1.0),
        "x2": (0.25, 0.25, 0.25, 0.25),
        "hamiltonian": None,
        "phidot": (-2.0, -2.0, 2.0, 2.0),
    }
    e = math.sqrt(1.0 + 0.09)
    for op, expected in cases.items():
        out = tmp_path / op
        argv = ["--out", str(out), "spectrum", "--operator", op,
                "--p", "0.3", "0", "0", "--r", "0.5"]
        assert run(argv) == 0
        report = load(out / "spectrum_report.json")
        evals = report["eigenvalues"]
        if op == "hamiltonian":
            assert np.allclose(evals, [-e, -e, e, e], atol=1e-12)
        else:
            assert np.allclose(evals, expected, atol=1e-12)
        if op == "alpha_x":
            # weights (1 -/+ c p / E) / 2 pair with the -/+ c branches
            w = 0.5 * (1.0 + 0.3 / e)
            assert np.allclose(sorted(report["pos_weights"]),
                               sorted([1 - w, 1 - w, w, w]), atol=1e-12)


def test_config_file_flag_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "simulate": {"mixing": 0.25, "n_nodes": 17, "n_samples": 128},
    }))
    out = tmp_path / "o"
    assert run(["--config", str(cfg), "--out", str(out), "simulate",
                "--mixing", "0.5"]) == 0
    report = load(out / "summary.json")
    assert report["config"]["mixing"] == 0.5       # flag wins
    assert report["config"]["n_nodes"] == 17       # file fills the rest


def test_out_env_and_flag(tmp_path, monkeypatch):
    env_dir = tmp_path / "from_env"
    monkeypatch.setenv("ZITTERLAB_OUT", str(env_dir))
    assert run(["verify", "--checks", "constants.alpha_consistency"]) == 0
    assert (env_dir / "verify_report.json").exists()
    flag_dir = tmp_path / "from_flag"
    assert run(["--out", str(flag_dir), "verify",
                "--checks", "constants.alpha_consistency"]) == 0
    assert (flag_dir / "verify_report.json").exists()


def test_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"simulate": {"wavelength": 3}}))
    assert run(["--config", str(bad), "--out", str(tmp_path / "o"),
                "simulate"]) == 2
    assert "wavelength" in capsys.readouterr().err

    missing = tmp_path / "absent.json"
    assert run(["--config", str(missing), "--out", str(tmp_path / "o"),
                "verify"]) == 3

    not_json = tmp_path / "mangled.json"
    not_json.write_text("{")
    assert run(["--config", str(not_json), "--out", str(tmp_path / "o"),
                "verify"]) == 2
