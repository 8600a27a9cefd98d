"""Magnetic moment of the electron by degenerate perturbation theory.

The interaction c alpha.pi couples the degenerate rest states only
across the energy gap 2mc^2: the first-order block vanishes identically,
and summing the second-order ladder with (sigma.pi)^2 = pi^2 - e hbar
sigma.B yields the kinetic term plus the Zeeman energy -(e hbar/2m) B,
i.e. a moment of one Bohr magneton (g = 2).

Feeding back the magnetic field of the circulating trembling charge as a
shift B -> B + delta_B in the fourth-order term produces the leading
radiative correction: delta_moment / moment = alpha / 2pi, so
g = 2 (1 + alpha/2pi).  An exact Landau-level diagonalization of the
same Hamiltonian cross-checks the g = 2 backbone numerically.

pi^2 enters the energy formulas as a real parameter; operator-valued
pi appears only in the identity check and the Landau cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dirac
from .constants import CODATA2018, PhysicalConstants
from .reporting import CheckResult, make_check

__all__ = [
    "FieldConfig",
    "RegimeError",
    "DerivativeInstabilityError",
    "natural_field_config",
    "si_field_config",
    "first_order_matrix",
    "second_order_energy",
    "second_order_energy_curve",
    "third_order_energy",
    "MagneticMoment",
    "magnetic_moment",
    "ZBFieldEstimate",
    "zb_induced_field",
    "fourth_order_energy",
    "fourth_order_energy_curve",
    "SchwingerCorrection",
    "schwinger_correction",
    "g_factor",
    "zb_self_energy",
    "MomentLedger",
    "derive_moment_ledger",
    "dirac_landau_crosscheck",
]


class RegimeError(ValueError):
    """Parameters outside the validity regime of a numerical check."""


class DerivativeInstabilityError(RuntimeError):
    """Richardson extrapolants disagree: energy function not smooth in B."""


@dataclass(frozen=True)
class FieldConfig:
    """Charge, mass and applied field for the perturbation ladder.

    Defaults are electron-scale natural units (e = m = c = hbar = 1);
    epsilon0 is then fixed so the derived fine-structure constant equals
    the CODATA value.
    """

    b_field: float = 0.0
    e: float = 1.0
    m: float = 1.0
    c: float = 1.0
    hbar: float = 1.0
    epsilon0: float = 1.0 / (4.0 * math.pi * CODATA2018.alpha)

    def __post_init__(self):
        if self.b_field < 0:
            raise ValueError(f"b_field must be nonnegative, got {self.b_field}")
        if min(self.e, self.m, self.c, self.hbar, self.epsilon0) <= 0:
            raise ValueError("e, m, c, hbar, epsilon0 must all be positive")

    @property
    def fine_structure(self) -> float:
        """alpha derived from (e, epsilon0, hbar, c).

        The whole derivation chain uses this single value so the two
        routes to the moment correction agree to rounding, not merely to
        the precision of the tabulated alpha.
        """
        return self.e**2 / (4.0 * math.pi * self.epsilon0 * self.hbar * self.c)

    @property
    def bohr_magneton(self) -> float:
        return self.e * self.hbar / (2.0 * self.m)


def natural_field_config(b_field: float = 0.0) -> FieldConfig:
    return FieldConfig(b_field=b_field)


def si_field_config(b_field: float = 0.0,
                    constants: PhysicalConstants = CODATA2018) -> FieldConfig:
    return FieldConfig(
        b_field=b_field,
        e=constants.e,
        m=constants.m_e,
        c=constants.c,
        hbar=constants.hbar,
        epsilon0=constants.epsilon0,
    )


# Deterministic Hermitian stand-in for sigma.pi.  The second-order sum
# rule below holds for any Hermitian 2x2 block, so a fixed probe is
# enough to exercise the completeness argument numerically.
_PROBE = np.array([[0.3, 0.21 - 0.17j], [0.21 + 0.17j, -0.4]])


def _interaction(block: np.ndarray, c: float) -> np.ndarray:
    z = np.zeros((2, 2), dtype=complex)
    return np.block([[z, c * block], [c * block, z]])


_REST_PLUS = (np.array([1, 0, 0, 0], complex), np.array([0, 1, 0, 0], complex))
_REST_MINUS = (np.array([0, 0, 1, 0], complex), np.array([0, 0, 0, 1], complex))


def first_order_matrix(config: FieldConfig) -> np.ndarray:
    """First-order degenerate block <+a| c alpha.pi |+a'>: exactly zero.

    alpha.pi is block-off-diagonal in the energy basis at rest, so the
    2x2 block between positive-energy states vanishes identically; no
    tolerance is involved.
    """
    scale = config.m * config.c
    h_int = _interaction(scale * _PROBE, config.c)
    block = np.array([
        [np.vdot(a, h_int @ b) for b in _REST_PLUS] for a in _REST_PLUS
    ])
    return block


def _sum_rule_deviation(block: np.ndarray, c: float) -> float:
    """max over the two degenerate states of the closure defect
    |sum_b |<b|V|+a>|^2 - <+a|V^2|+a>|, scaled."""
    h_int = _interaction(block, c)
    worst = 0.0
    for a in _REST_PLUS:
        total = sum(
            abs(np.vdot(b, h_int @ a)) ** 2 for b in (*_REST_PLUS, *_REST_MINUS)
        )
        exact = float(np.real(np.vdot(a, h_int @ h_int @ a)))
        worst = max(worst, abs(total - exact) / max(1.0, abs(exact)))
    return worst


def second_order_energy(config: FieldConfig, pi_sq: float,
                        aligned: bool = True) -> float:
    """Second-order energy of a rest state: pi^2/2m -+ (e hbar/2m) B.

    Evaluates the intermediate-state sum over the negative-energy pair
    (gap 2mc^2), checks it closes onto <V^2>/2mc^2 by completeness, then
    reduces <(sigma.pi)^2> with the field identity.  ``aligned`` selects
    the spin branch along B (aligned lowers the energy).
    """
    e, m, c, hbar = config.e, config.m, config.c, config.hbar

    # completeness of the intermediate states, probed with a generic
    # Hermitian block and, when it exists, the faithful diagonal one
    probes = [config.m * config.c * _PROBE]
    squares = (pi_sq - e * hbar * config.b_field, pi_sq + e * hbar * config.b_field)
    if min(squares) >= 0.0:
        probes.append(np.diag(np.sqrt(np.array(squares))))
    for probe in probes:
        dev = _sum_rule_deviation(probe, c)
        if dev > 1e-12:
            raise RuntimeError(f"intermediate-state sum rule violated: {dev:.3e}")

    sign = -1.0 if aligned else 1.0
    return pi_sq / (2.0 * m) + sign * config.bohr_magneton * config.b_field


def second_order_energy_curve(config: FieldConfig, pi_sq: float,
                              aligned: bool = True):
    """The second-order energy as an analytic function of B.

    Continuation to B < 0 is what the symmetric difference quotients of
    :func:`magnetic_moment` sample.
    """
    sign = -1.0 if aligned else 1.0
    mu = config.bohr_magneton
    kinetic = pi_sq / (2.0 * config.m)

    def energy(b_field: float) -> float:
        return kinetic + sign * mu * b_field

    return energy


def third_order_energy(config: FieldConfig) -> float:
    """Third-order correction: zero by the block structure.

    Every path +a -> -b -> -g -> +a needs a matrix element between two
    negative-energy states, and those vanish identically for the
    block-off-diagonal interaction.  Computed by direct summation.
    """
    h_int = _interaction(config.m * config.c * _PROBE, config.c)
    gap = 2.0 * config.m * config.c**2
    total = 0.0
    for a in _REST_PLUS:
        for b in _REST_MINUS:
            for g in _REST_MINUS:
                total += np.real(
                    np.vdot(a, h_int @ b) * np.vdot(b, h_int @ g)
                    * np.vdot(g, h_int @ a)
                ) / gap**2
    return total


@dataclass(frozen=True)
class MagneticMoment:
    """Numeric B -> 0 moment with its analytic reference value."""

    value: float
    analytic: float
    extrapolants: tuple[float, float]


def magnetic_moment(energy_fn, config: FieldConfig,
                    step: float = 1e-3) -> MagneticMoment:
    """Moment = -dE/dB in the limit B -> 0.

    Symmetric difference quotients at steps (h, h/2, h/4) are Richardson
    extrapolated twice.  The two first-level extrapolants must agree to
    1e-6 relative; otherwise the energy function is not smooth enough at
    B = 0 and DerivativeInstabilityError is raised.
    """
    quotients = []
    for h in (step, step / 2.0, step / 4.0):
        hi, lo = energy_fn(h), energy_fn(-h)
        if not (math.isfinite(hi) and math.isfinite(lo)):
            raise DerivativeInstabilityError(
                f"energy not finite at B = +-{h:.3e}"
            )
        quotients.append((hi - lo) / (2.0 * h))
    # symmetric quotients have an even error series, so halving the step
    # cancels h^2 with weight 4/3 and h^4 with weight 16/15
    level1 = (
        (4.0 * quotients[1] - quotients[0]) / 3.0,
        (4.0 * quotients[2] - quotients[1]) / 3.0,
    )
    if abs(level1[1] - level1[0]) > 1e-6 * max(1.0, abs(level1[1])):
        raise DerivativeInstabilityError(
            f"Richardson extrapolants disagree: {level1[0]!r} vs {level1[1]!r}"
        )
    derivative = (16.0 * level1[1] - level1[0]) / 15.0
    return MagneticMoment(
        value=-derivative,
        analytic=config.bohr_magneton,
        extrapolants=level1,
    )


@dataclass(frozen=True)
class ZBFieldEstimate:
    """Current loop of the circulating trembling charge and its field."""

    radius: float      # hbar / m c
    current: float     # e c / (2 pi radius)
    delta_b: float     # field at the loop center


def zb_induced_field(config: FieldConfig) -> ZBFieldEstimate:
    """Self-field of the trembling charge, treated as a circular current.

    The charge circulates at speed c on a loop of radius hbar/mc, giving
    the current e c / 2 pi R and a center field delta_B =
    I / (2 pi epsilon0 c^2 R) = e m^2 c / (4 pi^2 epsilon0 hbar^2).
    This is the heuristic feedback field of the moment correction, not a
    renormalized quantity.
    """
    e, m, c, hbar = config.e, config.m, config.c, config.hbar
    radius = hbar / (m * c)
    current = e * c / (2.0 * math.pi * radius)
    delta_b = current / (2.0 * math.pi * config.epsilon0 * c**2 * radius)
    return ZBFieldEstimate(radius=radius, current=current, delta_b=delta_b)


def fourth_order_energy(config: FieldConfig, pi_sq: float,
                        delta_b: float) -> float:
    """Fourth-order energy with the trembling-charge field feedback.

    -(1/2mc^2) [pi^4/4m^2 - 2 (pi^2/2m)(e hbar/2m)(B + delta_B)
    + (e^2 hbar^2/4m^2)(B + delta_B)^2], which is -(second order)^2 over
    the 2mc^2 gap with B shifted by delta_B.
    """
    return fourth_order_energy_curve(config, pi_sq, delta_b)(config.b_field)


def fourth_order_energy_curve(config: FieldConfig, pi_sq: float,
                              delta_b: float):
    """Fourth-order energy as an analytic function of B."""
    m, c = config.m, config.c
    mu = config.bohr_magneton
    gap = 2.0 * m * c**2

    def energy(b_field: float) -> float:
        shifted = b_field + delta_b
        second = pi_sq / (2.0 * m) - mu * shifted
        return -(second**2) / gap

    return energy


@dataclass(frozen=True)
class SchwingerCorrection:
    """Moment correction by the field-feedback route and in closed form."""

    value: float         # (e^2 hbar^2 / 4 m^3 c^2) delta_B
    closed_form: float   # (e hbar / 2m) alpha / 2pi
    moment_ratio: float  # value / (e hbar / 2m) = alpha / 2pi


def schwinger_correction(config: FieldConfig) -> SchwingerCorrection:
    """delta_moment from the induced-field shift; equals mu_B alpha/2pi.

    Both routes are evaluated from the same (e, epsilon0, hbar, c), so
    they must agree to rounding; a relative defect above 1e-12 raises.
    """
    e, m, c, hbar = config.e, config.m, config.c, config.hbar
    delta_b = zb_induced_field(config).delta_b
    value = (e**2 * hbar**2 / (4.0 * m**3 * c**2)) * delta_b
    closed = config.bohr_magneton * config.fine_structure / (2.0 * math.pi)
    if abs(value - closed) > 1e-12 * abs(closed):
        raise RuntimeError(
            f"moment-correction routes disagree: {value!r} vs {closed!r}"
        )
    return SchwingerCorrection(
        value=value,
        closed_form=closed,
        moment_ratio=value / config.bohr_magneton,
    )


def g_factor(config: FieldConfig) -> float:
    """g = 2 (1 + alpha/2pi) from the corrected moment."""
    return 2.0 * (1.0 + config.fine_structure / (2.0 * math.pi))


def zb_self_energy(config: FieldConfig) -> float:
    """Electrostatic energy of the trembling charge in its own loop
    field scale: alpha m c^2 (the rest energy becomes mc^2 (1 + alpha))."""
    return config.fine_structure * config.m * config.c**2


@dataclass(frozen=True)
class MomentLedger:
    """All rungs of the moment derivation evaluated for one config."""

    first_order_energy: float
    third_order_energy: float
    moment: MagneticMoment
    induced_field: ZBFieldEstimate
    delta_moment: float
    g: float
    self_energy: float


def derive_moment_ledger(config: FieldConfig, pi_sq: float = 0.0) -> MomentLedger:
    """Run the whole ladder and enforce its internal consistency.

    g * (e hbar / 4m) must equal moment + delta_moment to 1e-14
    relative; that is the definition of g, so a violation means the
    ledger itself is inconsistent.
    """
    first = first_order_matrix(config)
    moment = magnetic_moment(second_order_energy_curve(config, pi_sq), config)
    correction = schwinger_correction(config)
    g = g_factor(config)

    total = moment.analytic + correction.value
    defect = abs(g * config.bohr_magneton / 2.0 - total) / total
    if defect > 1e-14:
        raise RuntimeError(f"moment ledger inconsistent: defect {defect:.3e}")

    return MomentLedger(
        first_order_energy=float(np.abs(first).max()),
        third_order_energy=third_order_energy(config),
        moment=moment,
        induced_field=zb_induced_field(config),
        delta_moment=correction.value,
        g=g,
        self_energy=zb_self_energy(config),
    )


def _landau_hamiltonian(b_field: float, n_levels: int,
                        config: FieldConfig) -> np.ndarray:
    pi_x, pi_y = dirac.kinetic_momentum_operators(
        b_field, n_levels, e=config.e, hbar=config.hbar
    )
    ident = np.eye(n_levels)
    return (
        config.c * (np.kron(dirac.ALPHA_X, pi_x) + np.kron(dirac.ALPHA_Y, pi_y))
        + config.m * config.c**2 * np.kron(dirac.BETA, ident)
    )


def _positive_levels(b_field: float, n_levels: int,
                     config: FieldConfig) -> np.ndarray:
    evals = np.linalg.eigvalsh(_landau_hamiltonian(b_field, n_levels, config))
    return np.sort(evals[evals > 0.0])


def dirac_landau_crosscheck(b_field: float, n_levels: int = 64,
                            config: FieldConfig | None = None) -> CheckResult:
    """Exact diagonalization in a uniform field against closed-form levels.

    The positive spectrum must match E_k = sqrt(m^2c^4 + 2k e hbar B c^2)
    on the interior of the truncated basis, stay odd-symmetric with the
    negative branch, and the splitting of the lowest spin pair must
    extrapolate (B, B/2, B/4 with two Richardson levels) to the slope
    g (e hbar / 2m) with g = 2.

    measured = (fitted g, interior level deviation, spectrum asymmetry),
    both deviations relative to mc^2.  The note records the drift of the
    interior levels when the basis is doubled.
    """
    if config is None:
        config = natural_field_config()
    e, m, c, hbar = config.e, config.m, config.c, config.hbar
    cyclotron_ratio = e * hbar * b_field / (m**2 * c**2)
    if cyclotron_ratio > 0.05:
        raise RegimeError(
            f"field too large: e hbar B / m^2 c^2 = {cyclotron_ratio:.3e} > 0.05"
        )
    if n_levels < 32:
        raise RegimeError(f"need n_levels >= 32, got {n_levels}")

    rest = m * c**2

    def closed_form(n: int) -> np.ndarray:
        k = np.arange(n)
        levels = np.sqrt(rest**2 + 2.0 * k * e * hbar * b_field * c**2)
        # top truncated chain contributes one spurious rest-energy pair
        return np.sort(np.concatenate([levels, levels[1:], [rest]]))

    n_interior = n_levels  # lowest N of the 2N positive levels
    pos = _positive_levels(b_field, n_levels, config)
    interior_dev = float(np.max(np.abs(
        pos[:n_interior] - closed_form(n_levels)[:n_interior]
    ))) / rest

    doubled = _positive_levels(b_field, 2 * n_levels, config)
    truncation_dev = float(np.max(np.abs(
        pos[:n_interior] - doubled[:n_interior]
    ))) / rest

    evals = np.linalg.eigvalsh(_landau_hamiltonian(b_field, n_levels, config))
    spectrum = np.sort(evals)
    asymmetry = float(np.max(np.abs(spectrum + spectrum[::-1]))) / rest

    def split_per_field(b: float) -> float:
        levels = _positive_levels(b, n_levels, config)
        return (levels[2] - levels[0]) / b

    f0 = split_per_field(b_field)
    f1 = split_per_field(b_field / 2.0)
    f2 = split_per_field(b_field / 4.0)
    slope = (4.0 * (2.0 * f2 - f1) - (2.0 * f1 - f0)) / 3.0
    fitted_g = 2.0 * m * slope / (e * hbar)

    return make_check(
        name="dirac_landau_crosscheck",
        ref="relativistic Landau levels E_k = sqrt(m^2c^4 + 2k e hbar B c^2)",
        measured=(fitted_g, interior_dev, asymmetry),
        expected=(2.0, 0.0, 0.0),
        tolerance=1e-6,
        note=(
            f"B = {b_field!r}, n_levels = {n_levels}; interior drift on "
            f"doubling the basis: {truncation_dev:.3e}"
        ),
    )
