"""Command-line front end.

Four subcommands share a global option set (--config/--out/--units/--seed):

  verify    run named self-checks and write a pass/fail report
  simulate  evolve a wave packet, write trajectory.csv + summary.json
  perturb   tabulate the magnetic-moment derivation in both unit systems
  spectrum  diagonalize one of the trembling-motion operators

Settings resolve as flags > config file > defaults.  Output files are
deterministic for a fixed config and seed: no timestamps, sorted JSON
keys, round-trip float formatting.

Exit codes: 0 all checks pass, 1 some check failed, 2 usage or config
error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import dirac, kinematics, perturbation, verify, wavepacket
from .constants import CODATA2018, NATURAL_UNITS, SI_UNITS, convert
from .linalg import hermitian_eigensystem
from .reporting import (
    build_report,
    dump_report,
    make_check,
    write_trajectory_csv,
)

__all__ = ["main"]

_AXES = {"x": 0, "y": 1, "z": 2}

_GLOBAL_DEFAULTS = {"units": "natural", "seed": 1234, "out": "out"}
_SECTION_DEFAULTS = {
    "verify": {"checks": None, "inject_alpha_fault": False},
    "simulate": {
        "mixing": 0.5,
        "sigma_p": 0.05,
        "p0": 0.0,
        "n_nodes": 129,
        "n_samples": 512,
        "periods": 8.0,
        "axis": "x",
    },
    "perturb": {"b_field": 0.0, "pi_sq": 0.0},
    "spectrum": {
        "operator": "alpha_x",
        "p": [0.0, 0.0, 0.0],
        "t": 0.0,
        "phi": 0.0,
        "r": 0.5,
    },
}

_SPECTRUM_OPERATORS = ("alpha_x", "alpha_y", "alpha_z", "phidot", "x2",
                       "hamiltonian")


class ConfigError(Exception):
    """Bad configuration; carries the process exit code."""

    def __init__(self, message: str, exit_code: int = 2):
        super().__init__(message)
        self.exit_code = exit_code


def _load_config_file(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}", exit_code=3)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}")
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    known = set(_GLOBAL_DEFAULTS) | set(_SECTION_DEFAULTS)
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(
            f"unknown config keys {unknown}; known keys: {sorted(known)}"
        )
    for section, defaults in _SECTION_DEFAULTS.items():
        if section in raw:
            if not isinstance(raw[section], dict):
                raise ConfigError(f"config section {section!r} must be an object")
            bad = sorted(set(raw[section]) - set(defaults))
            if bad:
                raise ConfigError(
                    f"unknown keys {bad} in config section {section!r}"
                )
    return raw


def _resolve(command: str, args: argparse.Namespace) -> dict:
    """flags > config file > defaults, flattened for one command."""
    file_cfg = _load_config_file(args.config) if args.config else {}
    merged = dict(_GLOBAL_DEFAULTS)
    merged.update({k: file_cfg[k] for k in _GLOBAL_DEFAULTS if k in file_cfg})
    section = dict(_SECTION_DEFAULTS[command])
    section.update(file_cfg.get(command, {}))
    merged.update(section)
    if os.environ.get("ZITTERLAB_OUT"):
        merged["out"] = os.environ["ZITTERLAB_OUT"]
    for key in list(merged):
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag

    if merged["units"] not in ("natural", "si"):
        raise ConfigError(f"units must be 'natural' or 'si', got {merged['units']!r}")
    if not isinstance(merged["seed"], int) or isinstance(merged["seed"], bool):
        raise ConfigError(f"seed must be an integer, got {merged['seed']!r}")
    merged["command"] = command
    return merged


def _out_dir(cfg: dict) -> Path:
    path = Path(cfg["out"])
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {path}: {exc}",
                          exit_code=3)
    return path


def _write(path: Path, text: str) -> None:
    try:
        path.write_text(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc}", exit_code=3)


def _report_config(cfg: dict) -> dict:
    return {k: (str(v) if isinstance(v, Path) else v) for k, v in cfg.items()}


def _print_checks(checks) -> None:
    for c in checks:
        if c.passed:
            print(f"[PASS] {c.name}")
        else:
            print(f"[FAIL] {c.name}: measured={c.measured} "
                  f"expected={c.expected} tol={c.tolerance:g}")
    n_fail = sum(not c.passed for c in checks)
    print(f"{len(checks)} checks: {len(checks) - n_fail} passed, {n_fail} failed")


# ------------------------------------------------------------------- verify

def _cmd_verify(cfg: dict) -> int:
    settings = verify.VerifySettings(
        seed=cfg["seed"],
        alpha_fault=1e-3 if cfg["inject_alpha_fault"] else 0.0,
    )
    if cfg["checks"] is None:
        names = verify.available_checks()
    else:
        prefixes = []
        for chunk in cfg["checks"]:
            prefixes.extend(p.strip() for p in chunk.split(",") if p.strip())
        if not prefixes:
            raise ConfigError("no checks selected")
        try:
            names = verify.select_checks(prefixes)
        except ValueError as exc:
            raise ConfigError(str(exc))

    results = verify.run_checks(names, settings)
    _print_checks(results)
    report = build_report("verify", _report_config(cfg), results)
    out = _out_dir(cfg) / "verify_report.json"
    _write(out, dump_report(report))
    print(f"report: {out}")
    return 0 if report["overall_pass"] else 1


# ----------------------------------------------------------------- simulate

def _cmd_simulate(cfg: dict) -> int:
    si = cfg["units"] == "si"
    axis = _AXES.get(cfg["axis"])
    if axis is None:
        raise ConfigError(f"axis must be one of {sorted(_AXES)}, got {cfg['axis']!r}")
    try:
        packet = wavepacket.gaussian_packet(
            mixing=cfg["mixing"], sigma_p=cfg["sigma_p"], p0=cfg["p0"],
            n_nodes=cfg["n_nodes"],
        )
        samples = wavepacket.simulate_trajectory(
            packet, n_samples=cfg["n_samples"], periods=cfg["periods"]
        )
        signature = wavepacket.extract_zb_signature(samples, axis=axis)
    except (ValueError, wavepacket.InsufficientDataError) as exc:
        raise ConfigError(f"simulate: {exc}")

    freq_u = NATURAL_UNITS.factor("frequency") if si else 1.0
    len_u = NATURAL_UNITS.factor("length") if si else 1.0
    time_u = NATURAL_UNITS.factor("time") if si else 1.0
    speed_u = NATURAL_UNITS.factor("speed") if si else 1.0
    if si:
        samples = [
            wavepacket.TrajectorySample(
                t=s.t * time_u,
                x_mean=s.x_mean * len_u,
                v_mean=s.v_mean * speed_u,
                pos_weight=s.pos_weight,
                norm=s.norm,
            )
            for s in samples
        ]

    # expected trembling signature for a rest-frame mixture: frequency
    # 2mc^2/hbar, amplitude 2 sqrt(f(1-f)) * hbar/2mc
    f = cfg["mixing"]
    amp_scale = 0.5 * len_u
    expected_amp = 2.0 * math.sqrt(f * (1.0 - f)) * amp_scale
    checks = [
        make_check(
            "simulate.amplitude",
            "trembling amplitude = 2 sqrt(f(1-f)) hbar/2mc",
            measured=signature.amplitude * len_u,
            expected=expected_amp,
            tolerance=0.05 * amp_scale if 0.0 < f < 1.0 else 1e-6 * amp_scale,
        )
    ]
    if expected_amp > 1e-6 * amp_scale:
        checks.insert(0, make_check(
            "simulate.frequency",
            "trembling frequency = 2 m c^2 / hbar",
            measured=signature.frequency * freq_u,
            expected=2.0 * freq_u,
            tolerance=0.02 * freq_u,
        ))

    out = _out_dir(cfg)
    csv_path = out / "trajectory.csv"
    try:
        write_trajectory_csv(csv_path, samples, axis=axis)
    except OSError as exc:
        raise ConfigError(f"cannot write {csv_path}: {exc}", exit_code=3)

    report = build_report(
        "simulate", _report_config(cfg), checks,
        extra={
            "signature": {
                "frequency": signature.frequency * freq_u,
                "amplitude": signature.amplitude * len_u,
                "phase": signature.phase,
            },
            "trajectory_csv": csv_path.name,
            "n_samples": len(samples),
        },
    )
    _write(out / "summary.json", dump_report(report))
    _print_checks(checks)
    print(f"trajectory: {csv_path}")
    print(f"summary: {out / 'summary.json'}")
    return 0 if report["overall_pass"] else 1


# ------------------------------------------------------------------ perturb

def _perturb_rows(b_nat: float, pi_sq_nat: float) -> list[dict]:
    """The derivation evaluated independently in both unit systems."""
    mom_u = NATURAL_UNITS.factor("momentum")
    ledgers = {
        "natural": perturbation.derive_moment_ledger(
            perturbation.natural_field_config(b_nat), pi_sq_nat
        ),
        "si": perturbation.derive_moment_ledger(
            perturbation.si_field_config(
                convert(b_nat, "field", NATURAL_UNITS, SI_UNITS)
            ),
            pi_sq_nat * mom_u**2,
        ),
    }

    def row(quantity: str, kind: str, getter) -> dict:
        return {
            "quantity": quantity,
            "kind": kind,
            "natural": getter(ledgers["natural"]),
            "si": getter(ledgers["si"]),
        }

    return [
        row("first_order_energy", "energy", lambda L: L.first_order_energy),
        row("third_order_energy", "energy", lambda L: L.third_order_energy),
        row("moment_numeric", "moment", lambda L: L.moment.value),
        row("moment_analytic", "moment", lambda L: L.moment.analytic),
        row("loop_radius", "length", lambda L: L.induced_field.radius),
        row("loop_current", "current", lambda L: L.induced_field.current),
        row("delta_b", "field", lambda L: L.induced_field.delta_b),
        row("delta_moment", "moment", lambda L: L.delta_moment),
        row("moment_ratio", "dimensionless",
            lambda L: L.delta_moment / L.moment.analytic),
        row("g_factor", "dimensionless", lambda L: L.g),
        row("self_energy", "energy", lambda L: L.self_energy),
    ]


def _cmd_perturb(cfg: dict) -> int:
    si = cfg["units"] == "si"
    b_field, pi_sq = cfg["b_field"], cfg["pi_sq"]
    if si:
        b_field = convert(b_field, "field", SI_UNITS, NATURAL_UNITS)
        pi_sq = pi_sq / NATURAL_UNITS.factor("momentum") ** 2
    try:
        rows = _perturb_rows(b_field, pi_sq)
    except (ValueError, RuntimeError) as exc:
        raise ConfigError(f"perturb: {exc}")

    # the same chain run with CODATA inputs must land on the natural-unit
    # values once converted; CODATA rounding allows ~1e-9
    route_dev = 0.0
    for r in rows:
        si_from_nat = r["natural"] * NATURAL_UNITS.factor(r["kind"])
        scale = max(abs(r["si"]), abs(si_from_nat))
        if scale > 0.0:
            route_dev = max(route_dev, abs(r["si"] - si_from_nat) / scale)

    by_name = {r["quantity"]: r for r in rows}
    checks = [
        make_check(
            "perturb.moment_numeric",
            "-dE/dB at B -> 0 equals e hbar / 2m",
            measured=by_name["moment_numeric"]["natural"]
            / by_name["moment_analytic"]["natural"] - 1.0,
            expected=0.0,
            tolerance=1e-10,
        ),
        make_check(
            "perturb.schwinger_ratio",
            "delta_moment / moment = alpha / 2 pi",
            measured=by_name["moment_ratio"]["natural"],
            expected=CODATA2018.alpha / (2.0 * math.pi),
            tolerance=1e-9 * CODATA2018.alpha,
        ),
        make_check(
            "perturb.g_factor",
            "g = 2 (1 + alpha / 2 pi)",
            measured=by_name["g_factor"]["natural"],
            expected=2.00232282,
            tolerance=1e-8,
        ),
        make_check(
            "perturb.unit_routes",
            "natural-unit chain converted to SI matches the SI chain",
            measured=route_dev,
            expected=0.0,
            tolerance=2e-9,
        ),
    ]

    width = max(len(r["quantity"]) for r in rows)
    print(f"{'quantity':<{width}}  {'natural':>22}  {'si':>22}  kind")
    for r in rows:
        print(f"{r['quantity']:<{width}}  {r['natural']:>22.15e}  "
              f"{r['si']:>22.15e}  {r['kind']}")
    _print_checks(checks)

    report = build_report(
        "perturb", _report_config(cfg), checks, extra={"rows": rows}
    )
    out = _out_dir(cfg) / "perturb_report.json"
    _write(out, dump_report(report))
    print(f"report: {out}")
    return 0 if report["overall_pass"] else 1


# ----------------------------------------------------------------- spectrum

def _spectrum_matrix(cfg: dict):
    """Operator matrix, its quantity kind, and the momentum for weights."""
    p = np.asarray(cfg["p"], dtype=float)
    if p.shape != (3,):
        raise ConfigError(f"p must be three numbers, got {cfg['p']!r}")
    name = cfg["operator"]
    if name in ("alpha_x", "alpha_y", "alpha_z"):
        axis = _AXES[name[-1]]
        return dirac.ALPHAS[axis], "speed", p
    if name == "phidot":
        if cfg["r"] <= 0:
            raise ConfigError(f"r must be positive, got {cfg['r']!r}")
        return kinematics.angular_velocity_operator(cfg["phi"], cfg["r"]), \
            "frequency", p
    if name == "x2":
        x = kinematics.zb_displacement_operator(cfg["t"], m=1.0)
        return x.conj().T @ x, "length_squared", p
    if name == "hamiltonian":
        return dirac.free_hamiltonian(p, m=1.0), "energy", p
    raise ConfigError(
        f"unknown operator {name!r}; choose from {_SPECTRUM_OPERATORS}"
    )


def _cmd_spectrum(cfg: dict) -> int:
    matrix, kind, p = _spectrum_matrix(cfg)
    evals, evecs = hermitian_eigensystem(matrix)
    plus, _ = dirac.energy_projectors(p, m=1.0)
    weights = [float(np.linalg.norm(plus @ evecs[:, j]) ** 2)
               for j in range(4)]
    spins = [float(np.real(np.vdot(evecs[:, j], dirac.SIGMA_Z4 @ evecs[:, j])))
             for j in range(4)]

    if kind == "length_squared":
        unit = NATURAL_UNITS.factor("length") ** 2
    else:
        unit = NATURAL_UNITS.factor(kind)
    scale = unit if cfg["units"] == "si" else 1.0

    resid = float(np.abs(evecs @ np.diag(evals) @ evecs.conj().T - matrix).max())
    op_scale = max(1.0, float(np.abs(matrix).max()))
    checks = [
        make_check(
            "spectrum.reconstruction",
            "V diag(w) V^dag reproduces the operator",
            measured=resid / op_scale,
            expected=0.0,
            tolerance=1e-12,
        ),
        make_check(
            "spectrum.orthonormal",
            "eigenvector columns are orthonormal",
            measured=float(np.abs(evecs.conj().T @ evecs - np.eye(4)).max()),
            expected=0.0,
            tolerance=1e-12,
        ),
    ]

    print(f"operator: {cfg['operator']}  ({cfg['units']} units)")
    print(f"{'eigenvalue':>24}  {'pos_weight':>12}  {'<Sigma_z>':>12}")
    for j in range(4):
        print(f"{evals[j] * scale:>24.15e}  {weights[j]:>12.9f}  "
              f"{spins[j]:>12.9f}")
    _print_checks(checks)

    report = build_report(
        "spectrum", _report_config(cfg), checks,
        extra={
            "eigenvalues": [v * scale for v in evals.tolist()],
            "pos_weights": weights,
            "spin_z": spins,
            "eigenvectors": [
                [[float(z.real), float(z.imag)] for z in evecs[:, j]]
                for j in range(4)
            ],
        },
    )
    out = _out_dir(cfg) / "spectrum_report.json"
    _write(out, dump_report(report))
    print(f"report: {out}")
    return 0 if report["overall_pass"] else 1


# ------------------------------------------------------------------ parsing

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zitterlab",
        description="Trembling-motion toolkit for the free Dirac electron.",
    )
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--out", help="output directory (default 'out', or "
                                      "ZITTERLAB_OUT)")
    parser.add_argument("--units", choices=("natural", "si"))
    parser.add_argument("--seed", type=int)
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run numerical self-checks")
    p_verify.add_argument(
        "--checks", action="append", metavar="PREFIX[,PREFIX...]",
        help="dotted-name prefixes of checks to run (default: all)",
    )
    p_verify.add_argument(
        "--inject-alpha-fault", action="store_true", default=None,
        dest="inject_alpha_fault",
        help="scale the coupling used by the moment chain to prove the "
             "g-factor checks can fail",
    )

    p_sim = sub.add_parser("simulate", help="wave-packet trajectory")
    p_sim.add_argument("--mixing", type=float,
                       help="positive-energy fraction f (default 0.5)")
    p_sim.add_argument("--sigma-p", type=float, dest="sigma_p",
                       help="momentum spread (natural units)")
    p_sim.add_argument("--p0", type=float, help="central momentum")
    p_sim.add_argument("--n-nodes", type=int, dest="n_nodes")
    p_sim.add_argument("--n-samples", type=int, dest="n_samples")
    p_sim.add_argument("--periods", type=float,
                       help="simulated span in trembling periods")
    p_sim.add_argument("--axis", choices=tuple(_AXES))

    p_pert = sub.add_parser("perturb", help="magnetic-moment derivation")
    p_pert.add_argument("--b-field", type=float, dest="b_field",
                        help="applied field (in the selected units)")
    p_pert.add_argument("--pi-sq", type=float, dest="pi_sq",
                        help="kinetic momentum squared (in the selected units)")

    p_spec = sub.add_parser("spectrum", help="diagonalize an operator")
    p_spec.add_argument("--operator", choices=_SPECTRUM_OPERATORS)
    p_spec.add_argument("--p", type=float, nargs=3, metavar=("PX", "PY", "PZ"))
    p_spec.add_argument("--t", type=float, help="time for x2")
    p_spec.add_argument("--phi", type=float, help="azimuth for phidot")
    p_spec.add_argument("--r", type=float, help="orbit radius for phidot")
    return parser


_COMMANDS = {
    "verify": _cmd_verify,
    "simulate": _cmd_simulate,
    "perturb": _cmd_perturb,
    "spectrum": _cmd_spectrum,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve(args.command, args)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
