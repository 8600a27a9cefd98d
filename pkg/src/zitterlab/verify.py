"""Registry of numerical self-checks covering the whole package.

Every check pits two independent routes to the same quantity against
each other (operator identity vs closed form, quadrature vs analytic
integral, simulation vs operator prediction) and reduces the outcome to
a CheckResult.  Checks are selected by dotted-name prefix, so e.g.
``fock`` runs every second-quantized check.

``VerifySettings.alpha_fault`` exists to prove the harness can fail: it
scales the coupling used by the moment chain, which must break the
g-factor checks without tripping any internal consistency guard.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dirac, fock, kinematics, perturbation, wavepacket
from .constants import CODATA2018
from .linalg import anticommutator, commutator, matrix_exponential
from .reporting import CheckResult, make_check

__all__ = [
    "VerifySettings",
    "available_checks",
    "select_checks",
    "run_checks",
]


@dataclass(frozen=True)
class VerifySettings:
    seed: int = 1234
    alpha_fault: float = 0.0

    def field_config(self, b_field: float = 0.0) -> perturbation.FieldConfig:
        # a fault scales alpha = e^2/(4 pi eps0 hbar c) through epsilon0,
        # leaving every internal route-vs-route comparison consistent
        return perturbation.FieldConfig(
            b_field=b_field,
            epsilon0=1.0 / (4.0 * math.pi * CODATA2018.alpha
                            * (1.0 + self.alpha_fault)),
        )


def _renamed(check: CheckResult, name: str) -> CheckResult:
    return make_check(name, check.ref, check.measured, check.expected,
                      check.tolerance, note=check.note)


# ---------------------------------------------------------------- constants

def _check_alpha_consistency(s: VerifySettings) -> CheckResult:
    return make_check(
        "constants.alpha_consistency",
        "alpha = e^2 / (4 pi epsilon0 hbar c)",
        measured=CODATA2018.alpha_consistency(),
        expected=0.0,
        tolerance=1e-9,
    )


def _check_zb_frequency_si(s: VerifySettings) -> CheckResult:
    k = CODATA2018
    freq = 2.0 * k.m_e * k.c**2 / k.hbar
    return make_check(
        "constants.zb_frequency_si",
        "omega = 2 m c^2 / hbar",
        measured=freq / 1.552688142210022e21 - 1.0,
        expected=0.0,
        tolerance=1e-12,
        note="reference value from an independent evaluation of the formula",
    )


def _check_zb_amplitude_si(s: VerifySettings) -> CheckResult:
    k = CODATA2018
    amp = k.hbar / (2.0 * k.m_e * k.c)
    return make_check(
        "constants.zb_amplitude_si",
        "amplitude = hbar / 2 m c",
        measured=amp / 1.9307963386214167e-13 - 1.0,
        expected=0.0,
        tolerance=1e-12,
        note="reference value from an independent evaluation of the formula",
    )


# ------------------------------------------------------------------ algebra

def _check_anticommutation(s: VerifySettings) -> CheckResult:
    worst = 0.0
    gens = list(dirac.ALPHAS) + [dirac.BETA]
    for i, a in enumerate(gens):
        for j, b in enumerate(gens):
            want = 2.0 * np.eye(4) if i == j else np.zeros((4, 4))
            worst = max(worst, float(np.abs(anticommutator(a, b) - want).max()))
    return make_check(
        "algebra.anticommutation",
        "{alpha_i, alpha_j} = 2 delta_ij, {alpha_i, beta} = 0, beta^2 = 1",
        measured=worst,
        expected=0.0,
        tolerance=1e-12,
    )


def _check_dispersion(s: VerifySettings) -> CheckResult:
    rng = np.random.default_rng(s.seed)
    worst = 0.0
    for _ in range(100):
        p = rng.uniform(-3.0, 3.0, size=3)
        h = dirac.free_hamiltonian(p, m=1.0)
        e2 = dirac.dispersion_energy(p, m=1.0) ** 2
        worst = max(worst, float(np.abs(h @ h - e2 * np.eye(4)).max()) / e2)
    return make_check(
        "algebra.dispersion",
        "H^2 = (c^2 p^2 + m^2 c^4) I",
        measured=worst,
        expected=0.0,
        tolerance=1e-12,
        note="100 random momenta in [-3, 3]^3",
    )


def _check_exponential(s: VerifySettings) -> CheckResult:
    half_turn = matrix_exponential(dirac.BETA, scale=-1j * math.pi)
    quarter_turn = matrix_exponential(dirac.BETA, scale=-1j * math.pi / 2.0)
    dev = max(
        float(np.abs(half_turn + np.eye(4)).max()),
        float(np.abs(quarter_turn + 1j * dirac.BETA).max()),
    )
    return make_check(
        "algebra.exponential",
        "exp(-i pi beta) = -1, exp(-i pi beta / 2) = -i beta",
        measured=dev,
        expected=0.0,
        tolerance=1e-12,
    )


# ------------------------------------------------------------------ spinors

def _check_spinor_orthonormal(s: VerifySettings) -> CheckResult:
    rng = np.random.default_rng(s.seed + 1)
    worst = 0.0
    for _ in range(10):
        p = rng.uniform(-2.0, 2.0, size=3)
        u = np.column_stack(
            [sp.components for sp in dirac.plane_wave_spinors(p, m=1.0)]
        )
        worst = max(worst, float(np.abs(u.conj().T @ u - np.eye(4)).max()))
    return make_check(
        "spinors.orthonormal",
        "plane-wave spinors form an orthonormal 4-frame",
        measured=worst,
        expected=0.0,
        tolerance=1e-12,
    )


def _check_spinor_eigenstates(s: VerifySettings) -> CheckResult:
    rng = np.random.default_rng(s.seed + 2)
    worst = 0.0
    for _ in range(10):
        p = rng.uniform(-2.0, 2.0, size=3)
        h = dirac.free_hamiltonian(p, m=1.0)
        for sp in dirac.plane_wave_spinors(p, m=1.0):
            eigenvalue = sp.energy_sign * sp.energy
            resid = h @ sp.components - eigenvalue * sp.components
            worst = max(worst, float(np.abs(resid).max()) / sp.energy)
    return make_check(
        "spinors.eigenstates",
        "H u = +-E u for the four plane-wave spinors",
        measured=worst,
        expected=0.0,
        tolerance=1e-12,
    )


def _check_projectors(s: VerifySettings) -> CheckResult:
    rng = np.random.default_rng(s.seed + 3)
    worst = 0.0
    for _ in range(10):
        p = rng.uniform(-2.0, 2.0, size=3)
        plus, minus = dirac.energy_projectors(p, m=1.0)
        worst = max(
            worst,
            float(np.abs(plus + minus - np.eye(4)).max()),
            float(np.abs(plus @ plus - plus).max()),
            float(np.abs(plus @ minus).max()),
            abs(float(np.real(np.trace(plus))) - 2.0),
        )
    return make_check(
        "projectors.completeness",
        "energy projectors: idempotent, complementary, rank 2",
        measured=worst,
        expected=0.0,
        tolerance=1e-12,
    )


# ----------------------------------------------------------------- velocity

def _check_velocity_spectrum(s: VerifySettings) -> CheckResult:
    rng = np.random.default_rng(s.seed + 4)
    worst = 0.0
    for axis in range(3):
        p = rng.uniform(-2.0, 2.0, size=3)
        pairs = kinematics.velocity_eigensystem(axis, p, m=1.0)
        evals = np.array([q.eigenvalue for q in pairs])
        worst = max(worst, float(np.abs(evals - [-1, -1, 1, 1]).max()))
    return make_check(
        "velocity.spectrum",
        "instantaneous velocity eigenvalues are +-c, each twice",
        measured=worst,
        expected=0.0,
        tolerance=1e-12,
    )


def _check_velocity_rest_weights(s: VerifySettings) -> CheckResult:
    worst = 0.0
    for axis in range(3):
        pairs = kinematics.velocity_eigensystem(axis, np.zeros(3), m=1.0)
        worst = max(
            worst, max(abs(q.pos_weight - 0.5) for q in pairs)
        )
    return make_check(
        "velocity.rest_weights",
        "at p = 0 each velocity eigenvector is half positive-energy",
        measured=worst,
        expected=0.0,
        tolerance=1e-12,
    )


def _check_velocity_eigenbasis(s: VerifySettings) -> CheckResult:
    worst = 0.0
    for axis in range(3):
        op = dirac.ALPHAS[axis]
        frames = {}
        for sign in (1, -1):
            v = kinematics.velocity_eigenbasis(axis, sign)
            frames[sign] = v
            worst = max(
                worst,
                float(np.abs(op @ v - sign * v).max()),
                float(np.abs(v.conj().T @ v - np.eye(2)).max()),
            )
        cross = frames[1].conj().T @ frames[-1]
        worst = max(worst, float(np.abs(cross).max()))
    return make_check(
        "velocity.eigenbasis",
        "closed-form +-c eigenframes: eigenvectors, orthonormal, disjoint",
        measured=worst,
        expected=0.0,
        tolerance=1e-12,
    )


def _check_mean_square_velocity(s: VerifySettings) -> CheckResult:
    worst = 0.0
    for k in (1.0, 10.0, 100.0):
        quad = kinematics.mean_squared_velocity(k, m=1.0)
        closed = kinematics.mean_squared_velocity_closed_form(k, m=1.0)
        worst = max(worst, abs(quad / closed - 1.0))
    return make_check(
        "velocity.mean_square",
        "<v^2> quadrature vs c^2 [1 - 3(mc/k)^2 + 3(mc/k)^3 atan(k/mc)]",
        measured=worst,
        expected=0.0,
        tolerance=1e-10,
        note="k/mc in {1, 10, 100}",
    )


def _check_velocity_deficit_bound(s: VerifySettings) -> CheckResult:
    worst = 0.0
    for k in (2.0, 5.0, 20.0):
        deficit = 1.0 - kinematics.mean_squared_velocity_closed_form(k, m=1.0)
        worst = max(worst, max(0.0, deficit * k**2 / 3.0 - 1.0))
    return make_check(
        "velocity.deficit_bound",
        "c^2 - <v^2> <= 3 (mc/k)^2 c^2",
        measured=worst,
        expected=0.0,
        tolerance=1e-12,
    )


def _check_heisenberg_velocity(s: VerifySettings) -> CheckResult:
    p = np.array([0.3, -0.2, 0.5])
    m, t = 1.0, 0.37
    h = dirac.free_hamiltonian(p, m)
    u = matrix_exponential(h, scale=1j * t)
    worst = 0.0
    for axis in range(3):
        direct = u @ dirac.ALPHAS[axis] @ u.conj().T
        formula = kinematics.heisenberg_velocity(t, p, m, axis=axis)
        worst = max(worst, float(np.abs(direct - formula).max()))
    return make_check(
        "heisenberg.velocity",
        "c alpha(t) = c(alpha - c p H^-1) exp(-2iHt/hbar) + c^2 p H^-1",
        measured=worst,
        expected=0.0,
        tolerance=1e-12,
        note="against exp(iHt) alpha exp(-iHt) by matrix exponential",
    )


def _check_displacement_amplitude(s: VerifySettings) -> CheckResult:
    m = 1.0
    amp2 = kinematics.displacement_squared_eigenvalue(m)
    worst = 0.0
    for t in (0.0, 0.4, 2.9):
        x = kinematics.zb_displacement_operator(t, m)
        evals = np.linalg.eigvalsh(x.conj().T @ x)
        worst = max(worst, float(np.abs(evals - amp2).max()) / amp2)
    return make_check(
        "displacement.amplitude",
        "x_zb^dag x_zb = (hbar / 2 m c)^2 at every time",
        measured=worst,
        expected=0.0,
        tolerance=1e-12,
    )


def _angular_audit_entry(index: int, name: str):
    def build(s: VerifySettings) -> CheckResult:
        checks = kinematics.angular_eigenfunction_audit(phi=0.7)
        return _renamed(checks[index], name)

    return build


# -------------------------------------------------------------------- field

def _check_sigma_pi(s: VerifySettings) -> CheckResult:
    return _renamed(
        dirac.sigma_pi_squared_check(b_field=0.02, n_levels=48),
        "field.sigma_pi_identity",
    )


# --------------------------------------------------------------------- fock

def _fock_space() -> fock.FockSpace:
    return fock.build_fock_space(p=0.75, m=1.0)


def _check_fock_car(s: VerifySettings) -> CheckResult:
    space = _fock_space()
    ops = [space.annihilator(label) for label in fock.MODE_LABELS]
    worst = 0.0
    for i, a in enumerate(ops):
        for j, b in enumerate(ops):
            worst = max(worst, float(np.abs(anticommutator(a, b)).max()))
            want = np.eye(space.dim) if i == j else 0.0
            worst = max(
                worst,
                float(np.abs(anticommutator(a, b.conj().T) - want).max()),
            )
    return make_check(
        "fock.car",
        "{a_i, a_j} = 0 and {a_i, a_j^dag} = delta_ij on 8 modes",
        measured=worst,
        expected=0.0,
        tolerance=0.0,
        note="Jordan-Wigner construction is exact in integer arithmetic",
    )


def _check_current_hermitian(s: VerifySettings) -> CheckResult:
    space = _fock_space()
    worst = 0.0
    for current in (fock.zb_transverse_current(space, t=0.3),
                    fock.zb_longitudinal_current(space, t=0.3)):
        op = current.operator
        worst = max(worst, float(np.abs(op - op.conj().T).max()))
    return make_check(
        "fock.current_hermitian",
        "pair current + h.c. is Hermitian at every time",
        measured=worst,
        expected=0.0,
        tolerance=1e-12,
    )


def _check_current_commutator(s: VerifySettings) -> CheckResult:
    space = _fock_space()
    h = fock.fock_hamiltonian(space)
    gap = 2.0 * space.energy
    worst = 0.0
    for current in (fock.zb_transverse_current(space),
                    fock.zb_longitudinal_current(space)):
        for op, sign in ((current.raising, 1.0), (current.lowering, -1.0)):
            resid = commutator(h, op) - sign * gap * op
            scale = gap * float(np.abs(op).max())
            worst = max(worst, float(np.abs(resid).max()) / scale)
    return make_check(
        "fock.current_commutator",
        "[H, Z+-] = +-2E Z+- for both pair currents",
        measured=worst,
        expected=0.0,
        tolerance=1e-10,
    )


def _check_charge_conservation(s: VerifySettings) -> CheckResult:
    space = _fock_space()
    q = fock.charge_operator(space)
    worst = 0.0
    for current in (fock.zb_transverse_current(space),
                    fock.zb_longitudinal_current(space)):
        worst = max(
            worst, float(np.abs(commutator(q, current.operator)).max())
        )
    return make_check(
        "fock.charge_conservation",
        "[Q, J] = 0: pair currents conserve total charge",
        measured=worst,
        expected=0.0,
        tolerance=1e-12,
    )


def _check_longitudinal_weight(s: VerifySettings) -> CheckResult:
    space = _fock_space()
    vac = space.vacuum()
    rest_energy = space.m * space.c**2
    trans = fock.zb_transverse_current(space).raising @ vac
    longi = fock.zb_longitudinal_current(space).raising @ vac
    trans_ratio = float(np.linalg.norm(trans)) / (2.0 * space.c)
    longi_ratio = float(np.linalg.norm(longi)) * space.energy / (
        math.sqrt(2.0) * space.c * rest_energy
    )
    return make_check(
        "fock.pair_amplitudes",
        "vacuum pair amplitudes: transverse 2c, longitudinal sqrt(2) c mc^2/E",
        measured=(trans_ratio, longi_ratio),
        expected=(1.0, 1.0),
        tolerance=1e-12,
    )


def _check_pair_cycle(s: VerifySettings) -> CheckResult:
    return _renamed(fock.pair_cycle_audit(_fock_space()), "fock.pair_cycle")


# ------------------------------------------------------------------- packet

def _packet_signature(mixing: float):
    packet = wavepacket.gaussian_packet(mixing=mixing, sigma_p=0.05)
    samples = wavepacket.simulate_trajectory(packet, n_samples=512, periods=8.0)
    return wavepacket.extract_zb_signature(samples)


def _check_packet_frequency(s: VerifySettings) -> CheckResult:
    sig = _packet_signature(0.5)
    return make_check(
        "packet.frequency",
        "equal-mixture packet trembles at 2 m c^2 / hbar",
        measured=sig.frequency,
        expected=2.0,
        tolerance=0.02,
        note="natural units; fitted from 512 samples over 8 periods",
    )


def _check_packet_amplitude(s: VerifySettings) -> CheckResult:
    sig = _packet_signature(0.5)
    return make_check(
        "packet.amplitude",
        "equal-mixture packet amplitude is hbar / 2 m c",
        measured=sig.amplitude,
        expected=0.5,
        tolerance=0.025,
    )


def _check_packet_positive_only(s: VerifySettings) -> CheckResult:
    sig = _packet_signature(1.0)
    return make_check(
        "packet.positive_only",
        "single-branch packet shows no trembling",
        measured=sig.amplitude / 0.5,
        expected=0.0,
        tolerance=1e-6,
        note="amplitude relative to hbar / 2 m c",
    )


# ------------------------------------------------------------- perturbation

def _check_first_order(s: VerifySettings) -> CheckResult:
    block = perturbation.first_order_matrix(s.field_config(0.1))
    return make_check(
        "perturbation.first_order",
        "degenerate first-order block of c alpha.pi vanishes",
        measured=float(np.abs(block).max()),
        expected=0.0,
        tolerance=0.0,
    )


def _check_second_order(s: VerifySettings) -> CheckResult:
    config = s.field_config(0.08)
    pi_sq = 0.3
    value = perturbation.second_order_energy(config, pi_sq)
    # brute-force ladder with the faithful diagonal probe
    probe = np.diag(np.sqrt([
        pi_sq - config.e * config.hbar * config.b_field,
        pi_sq + config.e * config.hbar * config.b_field,
    ]))
    z = np.zeros((2, 2))
    h_int = np.block([[z, config.c * probe], [config.c * probe, z]])
    gap = 2.0 * config.m * config.c**2
    brute = sum(abs(h_int[k, 0]) ** 2 / gap for k in (2, 3))
    return make_check(
        "perturbation.second_order",
        "eps2 = pi^2/2m - (e hbar/2m) B from the intermediate-state sum",
        measured=abs(value - brute) / abs(brute),
        expected=0.0,
        tolerance=1e-12,
    )


def _check_third_order(s: VerifySettings) -> CheckResult:
    value = perturbation.third_order_energy(s.field_config(0.1))
    return make_check(
        "perturbation.third_order",
        "third-order correction vanishes by block structure",
        measured=value,
        expected=0.0,
        tolerance=0.0,
    )


def _check_moment(s: VerifySettings) -> CheckResult:
    config = s.field_config()
    curve = perturbation.second_order_energy_curve(config, pi_sq=0.3)
    moment = perturbation.magnetic_moment(curve, config)
    return make_check(
        "perturbation.moment",
        "-dE/dB at B -> 0 equals e hbar / 2m",
        measured=moment.value / moment.analytic - 1.0,
        expected=0.0,
        tolerance=1e-10,
    )


def _check_schwinger_ratio(s: VerifySettings) -> CheckResult:
    correction = perturbation.schwinger_correction(s.field_config())
    return make_check(
        "perturbation.schwinger_ratio",
        "delta_moment / moment = alpha / 2 pi",
        measured=correction.moment_ratio,
        expected=CODATA2018.alpha / (2.0 * math.pi),
        tolerance=1e-12 * CODATA2018.alpha,
    )


def _check_g_factor(s: VerifySettings) -> CheckResult:
    g = perturbation.g_factor(s.field_config())
    return make_check(
        "perturbation.g_factor",
        "g = 2 (1 + alpha / 2 pi)",
        measured=g,
        expected=2.00232282,
        tolerance=1e-8,
    )


def _check_self_energy(s: VerifySettings) -> CheckResult:
    config = s.field_config()
    rest = config.m * config.c**2
    return make_check(
        "perturbation.self_energy",
        "loop-field self-energy = alpha m c^2",
        measured=perturbation.zb_self_energy(config) / rest,
        expected=CODATA2018.alpha,
        tolerance=1e-12 * CODATA2018.alpha,
    )


def _check_landau(s: VerifySettings) -> CheckResult:
    return _renamed(
        perturbation.dirac_landau_crosscheck(b_field=0.01, n_levels=64),
        "perturbation.landau",
    )


_REGISTRY = [
    ("constants.alpha_consistency", _check_alpha_consistency),
    ("constants.zb_frequency_si", _check_zb_frequency_si),
    ("constants.zb_amplitude_si", _check_zb_amplitude_si),
    ("algebra.anticommutation", _check_anticommutation),
    ("algebra.dispersion", _check_dispersion),
    ("algebra.exponential", _check_exponential),
    ("spinors.orthonormal", _check_spinor_orthonormal),
    ("spinors.eigenstates", _check_spinor_eigenstates),
    ("projectors.completeness", _check_projectors),
    ("velocity.spectrum", _check_velocity_spectrum),
    ("velocity.rest_weights", _check_velocity_rest_weights),
    ("velocity.eigenbasis", _check_velocity_eigenbasis),
    ("velocity.mean_square", _check_mean_square_velocity),
    ("velocity.deficit_bound", _check_velocity_deficit_bound),
    ("heisenberg.velocity", _check_heisenberg_velocity),
    ("displacement.amplitude", _check_displacement_amplitude),
    ("angular.spectrum", _angular_audit_entry(0, "angular.spectrum")),
    ("angular.traceless", _angular_audit_entry(1, "angular.traceless")),
    ("angular.eigenfunction_1", _angular_audit_entry(2, "angular.eigenfunction_1")),
    ("angular.eigenfunction_2", _angular_audit_entry(3, "angular.eigenfunction_2")),
    ("angular.eigenfunction_3", _angular_audit_entry(4, "angular.eigenfunction_3")),
    ("angular.eigenfunction_4", _angular_audit_entry(5, "angular.eigenfunction_4")),
    ("field.sigma_pi_identity", _check_sigma_pi),
    ("fock.car", _check_fock_car),
    ("fock.current_hermitian", _check_current_hermitian),
    ("fock.current_commutator", _check_current_commutator),
    ("fock.charge_conservation", _check_charge_conservation),
    ("fock.pair_amplitudes", _check_longitudinal_weight),
    ("fock.pair_cycle", _check_pair_cycle),
    ("packet.frequency", _check_packet_frequency),
    ("packet.amplitude", _check_packet_amplitude),
    ("packet.positive_only", _check_packet_positive_only),
    ("perturbation.first_order", _check_first_order),
    ("perturbation.second_order", _check_second_order),
    ("perturbation.third_order", _check_third_order),
    ("perturbation.moment", _check_moment),
    ("perturbation.schwinger_ratio", _check_schwinger_ratio),
    ("perturbation.g_factor", _check_g_factor),
    ("perturbation.self_energy", _check_self_energy),
    ("perturbation.landau", _check_landau),
]


def available_checks() -> list[str]:
    return [name for name, _ in _REGISTRY]


def select_checks(prefixes) -> list[str]:
    """Names of checks matching any of the dotted-name prefixes.

    A prefix matches a whole dotted component: ``fock`` selects
    ``fock.car`` but not a hypothetical ``fockery.x``.  Unknown prefixes
    raise ValueError.
    """
    names = []
    for prefix in prefixes:
        hits = [
            name for name, _ in _REGISTRY
            if name == prefix or name.startswith(prefix + ".")
        ]
        if not hits:
            raise ValueError(
                f"no checks match {prefix!r}; known checks: "
                + ", ".join(available_checks())
            )
        names.extend(h for h in hits if h not in names)
    return names


def run_checks(names=None, settings: VerifySettings | None = None) -> list[CheckResult]:
    """Run the named checks (all of them by default), in registry order."""
    if settings is None:
        settings = VerifySettings()
    if names is None:
        names = available_checks()
    builders = dict(_REGISTRY)
    unknown = [n for n in names if n not in builders]
    if unknown:
        raise ValueError(f"unknown checks: {unknown}")
    return [builders[name](settings) for name in names]
