import json

import numpy as np
import pytest

from zitterlab.reporting import (
    REPORT_VERSION,
    TRAJECTORY_COLUMNS,
    CheckResult,
    build_report,
    check_to_dict,
    dump_report,
    format_float,
    make_check,
    validate_report,
    write_trajectory_csv,
)
from zitterlab.wavepacket import TrajectorySample


def test_check_passes_on_elementwise_tolerance():
    c = make_check("a", "b", (1.0, 2.0), (1.0, 2.0005), 1e-3)
    assert c.passed and c.status == "pass"
    c = make_check("a", "b", (1.0, 2.0), (1.0, 2.01), 1e-3)
    assert not c.passed and c.status == "fail"


def test_check_scalar_promotion():
    c = make_check("a", "b", 3.0, 3.0, 0.0)
    assert c.measured == (3.0,)
    assert c.expected == (3.0,)
    assert c.passed


def test_check_requires_name_and_ref():
    with pytest.raises(ValueError):
        make_check("", "b", 0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        make_check("a", "", 0.0, 0.0, 1.0)


def test_check_rejects_length_mismatch():
    with pytest.raises(ValueError):
        CheckResult("a", "b", (1.0,), (1.0, 2.0), 1e-3)


def test_check_to_dict_note_optional():
    assert "note" not in check_to_dict(make_check("a", "b", 0, 0, 1))
    assert check_to_dict(make_check("a", "b", 0, 0, 1, note="x"))["note"] == "x"


def _report():
    return build_report(
        "verify", {"seed": 1}, [make_check("a", "b", 0.0, 0.0, 1.0)]
    )


def test_build_report_shape():
    r = _report()
    assert r["report_version"] == REPORT_VERSION
    assert r["overall_pass"] is True
    validate_report(r)


def test_overall_pass_reflects_failures():
    r = build_report("verify", {}, [make_check("a", "b", 1.0, 0.0, 1e-6)])
    assert r["overall_pass"] is False


def test_validate_report_rejects_missing_key():
    r = _report()
    del r["checks"]
    with pytest.raises(ValueError, match="checks"):
        validate_report(r)


def test_validate_report_rejects_bad_status():
    r = _report()
    r["checks"][0]["status"] = "maybe"
    with pytest.raises(ValueError, match="status"):
        validate_report(r)


def test_validate_report_rejects_unknown_version():
    r = _report()
    r["report_version"] = 99
    with pytest.raises(ValueError, match="version"):
        validate_report(r)


def test_dump_report_sorted_and_stable():
    text = dump_report(_report())
    assert text == dump_report(_report())
    assert text.endswith("\n")
    parsed = json.loads(text)
    assert list(parsed) == sorted(parsed)


def test_format_float_round_trips():
    rng = np.random.default_rng(3)
    for _ in range(200):
        x = float(rng.normal() * 10.0 ** rng.integers(-20, 20))
        assert float(format_float(x)) == x


def test_trajectory_csv_golden(tmp_path):
    samples = [
        TrajectorySample(0.0, np.array([0.5, 0.0, 0.0]),
                         np.array([1.0, 0.0, 0.0]), 0.5, 1.0),
        TrajectorySample(0.25, np.array([-0.125, 0.0, 0.0]),
                         np.array([-1.0, 0.0, 0.0]), 0.5, 1.0),
    ]
    path = tmp_path / "traj.csv"
    write_trajectory_csv(path, samples)
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(TRAJECTORY_COLUMNS)
    assert lines[1] == "0,0.5,1,0.5,1"
    assert lines[2] == "0.25,-0.125,-1,0.5,1"


def test_trajectory_csv_axis_projection(tmp_path):
    samples = [
        TrajectorySample(0.0, np.array([1.0, 2.0, 3.0]),
                         np.array([4.0, 5.0, 6.0]), 0.5, 1.0),
    ]
    path = tmp_path / "traj.csv"
    write_trajectory_csv(path, samples, axis=2)
    assert path.read_text().splitlines()[1] == "0,3,6,0.5,1"
