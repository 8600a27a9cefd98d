"""Check records and deterministic report serialization.

Reports must be byte-stable: identical configuration and seed produce
identical files.  Keys are sorted, floats go through repr (shortest
round-trip form), and nothing time- or host-dependent is written.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from typing import Sequence

REPORT_VERSION = 1

#: Columns of the trajectory CSV, in order.
TRAJECTORY_COLUMNS = ("t", "x_mean", "v_mean", "pos_weight", "norm")


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one verification check.

    ``measured`` and ``expected`` are parallel tuples; the check passes
    iff |measured - expected| <= tolerance elementwise.  ``ref`` names the
    formula or identity being checked.
    """

    name: str
    ref: str
    measured: tuple[float, ...]
    expected: tuple[float, ...]
    tolerance: float
    status: str = field(init=False)
    note: str = ""

    def __post_init__(self):
        if not self.name or not self.ref:
            raise ValueError("CheckResult needs a nonempty name and ref")
        if len(self.measured) != len(self.expected):
            raise ValueError("measured and expected lengths differ")
        ok = all(
            abs(m - x) <= self.tolerance for m, x in zip(self.measured, self.expected)
        )
        object.__setattr__(self, "status", "pass" if ok else "fail")

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def make_check(name, ref, measured, expected, tolerance, note="") -> CheckResult:
    """Build a CheckResult from scalars or sequences."""
    if not isinstance(measured, (tuple, list)):
        measured = (measured,)
    if not isinstance(expected, (tuple, list)):
        expected = (expected,)
    return CheckResult(
        name=name,
        ref=ref,
        measured=tuple(float(m) for m in measured),
        expected=tuple(float(x) for x in expected),
        tolerance=float(tolerance),
        note=note,
    )


def check_to_dict(check: CheckResult) -> dict:
    d = {
        "name": check.name,
        "ref": check.ref,
        "measured": list(check.measured),
        "expected": list(check.expected),
        "tolerance": check.tolerance,
        "status": check.status,
    }
    if check.note:
        d["note"] = check.note
    return d


_REPORT_REQUIRED = {
    "report_version": int,
    "command": str,
    "config": dict,
    "checks": list,
    "overall_pass": bool,
}
_CHECK_REQUIRED = {
    "name": str,
    "ref": str,
    "measured": list,
    "expected": list,
    "tolerance": float,
    "status": str,
}


def validate_report(report: dict) -> None:
    """Raise ValueError if the report violates the published schema."""
    for key, typ in _REPORT_REQUIRED.items():
        if key not in report:
            raise ValueError(f"report missing required key {key!r}")
        if not isinstance(report[key], typ):
            raise ValueError(f"report key {key!r} must be {typ.__name__}")
    if report["report_version"] != REPORT_VERSION:
        raise ValueError(f"unsupported report_version {report['report_version']}")
    for entry in report["checks"]:
        if not isinstance(entry, dict):
            raise ValueError("each check must be an object")
        for key, typ in _CHECK_REQUIRED.items():
            if key not in entry:
                raise ValueError(f"check missing required key {key!r}")
            value = entry[key]
            if typ is float:
                if not isinstance(value, (int, float)):
                    raise ValueError(f"check key {key!r} must be a number")
            elif not isinstance(value, typ):
                raise ValueError(f"check key {key!r} must be {typ.__name__}")
        if entry["status"] not in ("pass", "fail"):
            raise ValueError("check status must be 'pass' or 'fail'")
        if not entry["name"] or not entry["ref"]:
            raise ValueError("check name and ref must be nonempty")


def build_report(command: str, config: dict, checks: Sequence[CheckResult],
                 extra: dict | None = None) -> dict:
    report = {
        "report_version": REPORT_VERSION,
        "command": command,
        "config": config,
        "checks": [check_to_dict(c) for c in checks],
        "overall_pass": all(c.passed for c in checks),
    }
    if extra:
        report.update(extra)
    validate_report(report)
    return report


def dump_report(report: dict) -> str:
    """Serialize a report deterministically (sorted keys, repr floats)."""
    validate_report(report)
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def format_float(x: float) -> str:
    """17 significant digits: round-trip exact for IEEE doubles."""
    return format(float(x), ".17g")


def write_trajectory_csv(path, samples, axis: int = 0) -> None:
    """Write trajectory samples, projecting 3-vectors onto ``axis``.

    The schema is fixed: t, x_mean, v_mean, pos_weight, norm.
    """
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRAJECTORY_COLUMNS)
        for s in samples:
            writer.writerow([
                format_float(s.t),
                format_float(s.x_mean[axis]),
                format_float(s.v_mean[axis]),
                format_float(s.pos_weight),
                format_float(s.norm),
            ])
