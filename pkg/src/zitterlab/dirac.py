"""Dirac algebra in the standard (Dirac-Pauli) representation.

The representation is fixed once here: alpha_i has the Pauli matrix
sigma_i on the antidiagonal blocks, beta = diag(I, -I).  Natural units
throughout (hbar = c = 1 unless passed explicitly); momenta are plain
3-vectors of floats.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .reporting import CheckResult, make_check

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMAS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

_I2 = np.eye(2, dtype=complex)
_Z2 = np.zeros((2, 2), dtype=complex)

ALPHA_X = np.block([[_Z2, SIGMA_X], [SIGMA_X, _Z2]])
ALPHA_Y = np.block([[_Z2, SIGMA_Y], [SIGMA_Y, _Z2]])
ALPHA_Z = np.block([[_Z2, SIGMA_Z], [SIGMA_Z, _Z2]])
ALPHAS = (ALPHA_X, ALPHA_Y, ALPHA_Z)
BETA = np.block([[_I2, _Z2], [_Z2, -_I2]])

#: Spin operator Sigma_z = diag(sigma_z, sigma_z).
SIGMA_Z4 = np.block([[SIGMA_Z, _Z2], [_Z2, SIGMA_Z]])

for _m in (*SIGMAS, *ALPHAS, BETA, SIGMA_Z4):
    _m.setflags(write=False)

AXIS_NAMES = {"x": 0, "y": 1, "z": 2}


def axis_index(axis) -> int:
    """Accept 0/1/2 or 'x'/'y'/'z'."""
    if isinstance(axis, str):
        try:
            return AXIS_NAMES[axis]
        except KeyError:
            raise ValueError(f"unknown axis {axis!r}") from None
    axis = int(axis)
    if axis not in (0, 1, 2):
        raise ValueError(f"axis must be 0, 1 or 2, got {axis}")
    return axis


def _check_momentum(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (3,):
        raise ValueError(f"momentum must be a 3-vector, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError("momentum components must be finite")
    return p


def free_hamiltonian(p, m: float, c: float = 1.0) -> np.ndarray:
    """H = c alpha.p + beta m c^2 for a single momentum, as a 4x4 matrix."""
    p = _check_momentum(p)
    if m < 0:
        raise ValueError(f"mass must be nonnegative, got {m}")
    h = m * c**2 * BETA.copy()
    for pi, alpha in zip(p, ALPHAS):
        h += c * pi * alpha
    return h


def dispersion_energy(p, m: float, c: float = 1.0) -> float:
    """E = sqrt(p^2 c^2 + m^2 c^4)."""
    p = _check_momentum(p)
    return float(np.sqrt(float(p @ p) * c**2 + m**2 * c**4))


@dataclass(frozen=True)
class MomentumPolynomial:
    """Operator polynomial in the momentum components.

    ``terms`` maps monomials to constant matrix coefficients:
    each entry is ((nx, ny, nz), matrix) for the monomial
    px^nx py^ny pz^nz.  Only polynomial momentum dependence can be
    represented, which is exactly what makes the velocity operator a
    plain momentum gradient.
    """

    terms: tuple[tuple[tuple[int, int, int], np.ndarray], ...]

    def __post_init__(self):
        for exps, coeff in self.terms:
            if len(exps) != 3 or any(int(n) != n or n < 0 for n in exps):
                raise ValueError(f"monomial exponents must be nonnegative ints: {exps}")
            if np.asarray(coeff).ndim != 2:
                raise ValueError("coefficients must be matrices")

    def evaluate(self, p) -> np.ndarray:
        p = _check_momentum(p)
        dim = self.terms[0][1].shape[0]
        out = np.zeros((dim, dim), dtype=complex)
        for (nx, ny, nz), coeff in self.terms:
            out += (p[0] ** nx) * (p[1] ** ny) * (p[2] ** nz) * np.asarray(coeff)
        return out

    def derivative(self, axis) -> "MomentumPolynomial":
        ax = axis_index(axis)
        new_terms = []
        for exps, coeff in self.terms:
            n = exps[ax]
            if n == 0:
                continue
            lowered = list(exps)
            lowered[ax] = n - 1
            new_terms.append((tuple(lowered), n * np.asarray(coeff)))
        if not new_terms:
            dim = self.terms[0][1].shape[0]
            new_terms.append(((0, 0, 0), np.zeros((dim, dim), dtype=complex)))
        return MomentumPolynomial(tuple(new_terms))

    @property
    def is_constant(self) -> bool:
        return all(exps == (0, 0, 0) for exps, _ in self.terms)

    def as_matrix(self) -> np.ndarray:
        """Collapse a momentum-independent polynomial to its matrix."""
        if not self.is_constant:
            raise ValueError("polynomial still depends on momentum")
        return self.evaluate(np.zeros(3))


def free_hamiltonian_polynomial(m: float, c: float = 1.0) -> MomentumPolynomial:
    """The free Hamiltonian as a momentum polynomial: c alpha.p + beta m c^2."""
    if m < 0:
        raise ValueError(f"mass must be nonnegative, got {m}")
    return MomentumPolynomial((
        ((1, 0, 0), c * ALPHA_X),
        ((0, 1, 0), c * ALPHA_Y),
        ((0, 0, 1), c * ALPHA_Z),
        ((0, 0, 0), m * c**2 * BETA),
    ))


def velocity_from_commutator(hamiltonian: MomentumPolynomial, axis) -> MomentumPolynomial:
    """Velocity operator v_i = (i/hbar)[H, x_i] = dH/dp_i.

    For any polynomial in momentum the canonical commutator reduces the
    Heisenberg velocity to the momentum gradient, evaluated termwise.
    For the free Dirac Hamiltonian this returns the constant c alpha_i.
    """
    if not isinstance(hamiltonian, MomentumPolynomial):
        raise TypeError(
            "velocity_from_commutator supports momentum polynomials only; "
            f"got {type(hamiltonian).__name__}"
        )
    return hamiltonian.derivative(axis)


@dataclass(frozen=True)
class Spinor:
    """A unit-normalized 4-spinor with its energy branch labels."""

    components: np.ndarray
    energy_sign: int      # +1 for u (positive energy), -1 for v
    spin_index: int       # 1 or 2
    energy: float         # |E| = sqrt(p^2 c^2 + m^2 c^4)

    @property
    def label(self) -> str:
        return f"{'u' if self.energy_sign > 0 else 'v'}{self.spin_index}"


def _fix_phase(v: np.ndarray) -> np.ndarray:
    # keyed to the dominant component, so the convention is continuous
    # in p (the chi block always dominates: its partner carries a factor
    # c|p|/(E + mc^2) < 1); superpositions over a momentum grid rely on
    # this smoothness
    idx = int(np.argmax(np.abs(v)))
    phase = v[idx] / abs(v[idx])
    return v * phase.conjugate()


def plane_wave_spinors(p, m: float, c: float = 1.0) -> list[Spinor]:
    """Free-particle eigenspinors (u1, u2, v1, v2) at fixed momentum.

    H(p) u_s = +E u_s and H(p) v_s = -E v_s with E = sqrt(p^2c^2 + m^2c^4).
    Each spinor is unit-normalized and phased so its dominant component
    is real positive; at p = 0 they reduce to the four basis columns
    (u1, u2, v1, v2) = (e1, e2, e3, e4).
    """
    p = _check_momentum(p)
    if m < 0:
        raise ValueError(f"mass must be nonnegative, got {m}")
    energy = dispersion_energy(p, m, c)
    if energy == 0.0:
        raise ValueError("p = 0 with m = 0 has no spinor basis (E = 0)")
    sigma_p = p[0] * SIGMA_X + p[1] * SIGMA_Y + p[2] * SIGMA_Z
    rest = m * c**2
    norm = np.sqrt((energy + rest) / (2.0 * energy))
    kin = c / (energy + rest)

    spinors = []
    for s, phi in ((1, np.array([1, 0], complex)), (2, np.array([0, 1], complex))):
        comp = norm * np.concatenate([phi, kin * (sigma_p @ phi)])
        spinors.append(Spinor(_fix_phase(comp), +1, s, energy))
    for s, chi in ((1, np.array([1, 0], complex)), (2, np.array([0, 1], complex))):
        comp = norm * np.concatenate([-kin * (sigma_p @ chi), chi])
        spinors.append(Spinor(_fix_phase(comp), -1, s, energy))
    for sp in spinors:
        sp.components.setflags(write=False)
    return spinors


def energy_projectors(p, m: float, c: float = 1.0):
    """(Lambda_plus, Lambda_minus) = (I +- H/E)/2 at fixed momentum."""
    energy = dispersion_energy(p, m, c)
    if energy == 0.0:
        raise ValueError("projectors undefined at E = 0")
    h = free_hamiltonian(p, m, c)
    ident = np.eye(4, dtype=complex)
    plus = 0.5 * (ident + h / energy)
    return plus, ident - plus


# ---------------------------------------------------------------------------
# Kinetic momentum in a uniform magnetic field, on a truncated oscillator
# basis.  Used by the (sigma.pi)^2 identity check here and by the Landau
# cross-check in the perturbation module.
# ---------------------------------------------------------------------------

def oscillator_ladder(n_levels: int) -> np.ndarray:
    """Truncated lowering operator: a|n> = sqrt(n)|n-1>, n < n_levels."""
    if n_levels < 2:
        raise ValueError("need at least 2 oscillator levels")
    a = np.zeros((n_levels, n_levels), dtype=complex)
    n = np.arange(1, n_levels)
    a[n - 1, n] = np.sqrt(n)
    return a


def kinetic_momentum_operators(b_field: float, n_levels: int,
                               e: float = 1.0, hbar: float = 1.0):
    """(pi_x, pi_y) for a charge e in a uniform field B along z.

    Built from one oscillator ladder so that [pi_x, pi_y] = i e hbar B on
    the interior of the truncated basis (the commutator is corrupted only
    in the top level, an unavoidable truncation artifact).
    """
    if b_field < 0:
        raise ValueError(f"field must be nonnegative, got {b_field}")
    a = oscillator_ladder(n_levels)
    adag = a.conj().T
    s = np.sqrt(e * hbar * b_field / 2.0)
    pi_x = s * (a + adag)
    pi_y = -1j * s * (a - adag)
    return pi_x, pi_y


def sigma_pi_squared_check(b_field: float, n_levels: int,
                           e: float = 1.0, hbar: float = 1.0) -> CheckResult:
    """Verify (sigma.pi)^2 = pi^2 - e hbar sigma.B on the truncated basis.

    The identity is exact on the interior levels; the top oscillator
    level picks up a truncation artifact, which is reported in the note
    but excluded from the measured deviation.
    """
    if n_levels < 4:
        raise ValueError("need at least 4 oscillator levels for an interior")
    pi_x, pi_y = kinetic_momentum_operators(b_field, n_levels, e, hbar)
    sp = np.kron(SIGMA_X, pi_x) + np.kron(SIGMA_Y, pi_y)
    lhs = sp @ sp
    pi_sq = pi_x @ pi_x + pi_y @ pi_y
    rhs = np.kron(_I2, pi_sq) - e * hbar * b_field * np.kron(SIGMA_Z, np.eye(n_levels))

    dev = np.abs(lhs - rhs)
    interior = np.ones(n_levels, dtype=bool)
    interior[-1] = False
    mask = np.concatenate([interior, interior])
    interior_dev = float(dev[np.ix_(mask, mask)].max())
    boundary_dev = float(dev.max())
    scale = max(1.0, float(np.abs(rhs).max()))
    return make_check(
        name="sigma_pi_squared_identity",
        ref="(sigma.pi)^2 = pi^2 - e hbar sigma.B",
        measured=interior_dev / scale,
        expected=0.0,
        tolerance=1e-10,
        note=f"boundary deviation {boundary_dev:.3e} excluded (truncated top level)",
    )
