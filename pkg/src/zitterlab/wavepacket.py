"""Wave-packet simulation of the trembling motion.

A packet lives on a 1-D momentum grid along x.  Each grid node carries
four complex amplitudes over the plane-wave spinors (u1, u2, v1, v2) of
that momentum; free evolution is a pure per-mode phase, so expectation
values reduce to mode-pairwise spinor matrix elements and the position
integral is analytic.  Interference between positive- and negative-energy
amplitudes of the same node is what oscillates at 2E/hbar.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize_scalar

from . import dirac

__all__ = [
    "WavePacket",
    "TrajectorySample",
    "ZBSignature",
    "InsufficientDataError",
    "gaussian_packet",
    "evolve",
    "expectation_velocity",
    "expectation_position",
    "simulate_trajectory",
    "extract_zb_signature",
]


@dataclass(frozen=True)
class WavePacket:
    """Momentum-grid state: amplitudes[j] = (u1, u2, v1, v2) weights at
    momenta[j] (momentum along x)."""

    momenta: np.ndarray        # (n,) float
    amplitudes: np.ndarray     # (n, 4) complex
    m: float
    c: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.momenta.ndim != 1 or self.amplitudes.shape != (len(self.momenta), 4):
            raise ValueError("amplitudes must have shape (len(momenta), 4)")

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    @property
    def pos_weight(self) -> float:
        """Total weight on the positive-energy branch; conserved by evolve."""
        return float(np.sum(np.abs(self.amplitudes[:, :2]) ** 2))

    def energies(self) -> np.ndarray:
        p, m, c = self.momenta, self.m, self.c
        return np.sqrt(p**2 * c**2 + m**2 * c**4)

    def mean_energy(self) -> float:
        w = np.sum(np.abs(self.amplitudes) ** 2, axis=1)
        return float(np.sum(w * self.energies()) / np.sum(w))


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    x_mean: np.ndarray     # (3,)
    v_mean: np.ndarray     # (3,)
    pos_weight: float
    norm: float


@dataclass(frozen=True)
class ZBSignature:
    frequency: float       # angular, rad per unit time
    amplitude: float
    phase: float           # x ~ amplitude * cos(frequency * t + phase) + drift


class InsufficientDataError(ValueError):
    """Series too short for signature extraction."""

    def __init__(self, message: str, required_span: float | None = None):
        super().__init__(message)
        self.required_span = required_span


def gaussian_packet(mixing: float = 0.5, sigma_p: float = 0.05, p0: float = 0.0,
                    n_nodes: int = 129, span: float = 5.0, m: float = 1.0,
                    c: float = 1.0, hbar: float = 1.0) -> WavePacket:
    """Gaussian momentum packet with a fixed energy-branch mixing.

    ``mixing`` is the positive-energy fraction f: each node carries
    sqrt(f) on u1 and sqrt(1-f) on v2, the pair whose interference drives
    the x-velocity at rest.  sigma_p = 0 collapses the grid to the single
    node p0.  The grid spans p0 +- span*sigma_p with n_nodes points and
    the total norm is 1.
    """
    if not 0.0 <= mixing <= 1.0:
        raise ValueError(f"mixing fraction must be in [0, 1], got {mixing}")
    if sigma_p < 0:
        raise ValueError(f"sigma_p must be nonnegative, got {sigma_p}")
    if n_nodes < 1:
        raise ValueError("need at least one grid node")
    if sigma_p == 0.0:
        momenta = np.array([p0])
        envelope = np.array([1.0])
    else:
        momenta = np.linspace(p0 - span * sigma_p, p0 + span * sigma_p, n_nodes)
        envelope = np.exp(-((momenta - p0) ** 2) / (4.0 * sigma_p**2))
    envelope = envelope / np.sqrt(np.sum(envelope**2))
    amplitudes = np.zeros((len(momenta), 4), dtype=complex)
    amplitudes[:, 0] = np.sqrt(mixing) * envelope
    amplitudes[:, 3] = np.sqrt(1.0 - mixing) * envelope
    return WavePacket(momenta, amplitudes, m=m, c=c, hbar=hbar)


def _spinor_basis(packet: WavePacket) -> np.ndarray:
    """(n, 4, 4) array: basis[j][:, s] = spinor s at node j."""
    basis = np.empty((len(packet.momenta), 4, 4), dtype=complex)
    for j, p in enumerate(packet.momenta):
        spinors = dirac.plane_wave_spinors(
            np.array([p, 0.0, 0.0]), packet.m, packet.c
        )
        basis[j] = np.column_stack([s.components for s in spinors])
    return basis


def evolve(packet: WavePacket, t: float) -> WavePacket:
    """Free evolution: u amplitudes pick up exp(-iEt/hbar), v amplitudes
    exp(+iEt/hbar).  Norm and branch weights are conserved exactly."""
    energies = packet.energies()
    phases = np.empty_like(packet.amplitudes)
    down = np.exp(-1j * energies * t / packet.hbar)
    phases[:, 0] = phases[:, 1] = down
    phases[:, 2] = phases[:, 3] = down.conjugate()
    return replace(packet, amplitudes=packet.amplitudes * phases)


def _velocity_from_states(psi: np.ndarray, c: float) -> np.ndarray:
    return np.array([
        float(np.real(np.einsum("ja,ab,jb->", psi.conj(), c * alpha, psi)))
        for alpha in dirac.ALPHAS
    ])


def expectation_velocity(packet: WavePacket) -> np.ndarray:
    """<c alpha> as a 3-vector.  Bounded by c in magnitude."""
    basis = _spinor_basis(packet)
    psi = np.einsum("jab,jb->ja", basis, packet.amplitudes)
    return _velocity_from_states(psi, packet.c)


def _position_terms(packet: WavePacket, basis: np.ndarray):
    """Time-independent pieces of <x>(t): drift 3-vector and the per-node
    u-v cross amplitudes, one row per axis."""
    pos = np.einsum("jab,jb->ja", basis[:, :, :2], packet.amplitudes[:, :2])
    neg = np.einsum("jab,jb->ja", basis[:, :, 2:], packet.amplitudes[:, 2:])
    drift = np.empty(3)
    cross = np.empty((3, len(packet.momenta)), dtype=complex)
    for i, alpha in enumerate(dirac.ALPHAS):
        calpha = packet.c * alpha
        drift[i] = float(np.real(
            np.einsum("ja,ab,jb->", pos.conj(), calpha, pos)
            + np.einsum("ja,ab,jb->", neg.conj(), calpha, neg)
        ))
        cross[i] = np.einsum("ja,ab,jb->j", pos.conj(), calpha, neg)
    return drift, cross


def _position_at(packet: WavePacket, drift: np.ndarray, cross: np.ndarray,
                 t: float) -> np.ndarray:
    energies = packet.energies()
    hbar = packet.hbar
    osc = (np.exp(2j * energies * t / hbar) - 1.0) * hbar / (2j * energies)
    return drift * t + 2.0 * np.real(cross @ osc)


def expectation_position(packet: WavePacket, t: float) -> np.ndarray:
    """Displacement over [0, t] starting from the packet's current state.

    Integral of the Heisenberg velocity: a linear drift from the
    branch-diagonal terms plus the analytically integrated 2E/hbar
    oscillation of each u-v cross term.
    """
    drift, cross = _position_terms(packet, _spinor_basis(packet))
    return _position_at(packet, drift, cross, t)


def simulate_trajectory(packet: WavePacket, n_samples: int = 512,
                        periods: float = 8.0) -> list[TrajectorySample]:
    """Sample <x>(t) and <v>(t) over the given number of 2<E>/hbar periods.

    Defaults (512 samples, 8 periods) satisfy the extraction
    preconditions with a wide margin.
    """
    if n_samples < 2:
        raise ValueError("need at least 2 samples")
    omega = 2.0 * packet.mean_energy() / packet.hbar
    t_final = periods * 2.0 * np.pi / omega
    times = np.linspace(0.0, t_final, n_samples)

    basis = _spinor_basis(packet)
    energies = packet.energies()
    hbar, c = packet.hbar, packet.c
    down = np.exp(-1j * np.outer(times, energies) / hbar)   # (T, n)
    drift, cross = _position_terms(packet, basis)

    samples = []
    for k, t in enumerate(times):
        amps = packet.amplitudes.copy()
        amps[:, :2] *= down[k][:, None]
        amps[:, 2:] *= down[k].conjugate()[:, None]
        evolved = replace(packet, amplitudes=amps)
        psi = np.einsum("jab,jb->ja", basis, amps)
        samples.append(
            TrajectorySample(
                t=float(t),
                x_mean=_position_at(packet, drift, cross, float(t)),
                v_mean=_velocity_from_states(psi, c),
                pos_weight=evolved.pos_weight,
                norm=evolved.norm,
            )
        )
    return samples


def _sinusoid_fit(times: np.ndarray, values: np.ndarray, omega: float):
    design = np.column_stack([
        np.cos(omega * times), np.sin(omega * times),
        np.ones_like(times), times,
    ])
    coef, *_ = np.linalg.lstsq(design, values, rcond=None)
    residual = float(np.linalg.norm(values - design @ coef))
    return residual, coef


def extract_zb_signature(samples, axis: int = 0, min_samples: int = 64,
                         min_periods: float = 4.0) -> ZBSignature:
    """Dominant oscillation of the sampled mean position.

    DFT peak of the detrended series seeds a least-squares fit of
    A cos(wt + phi) plus a linear drift, with the frequency refined
    within one DFT bin.  Raises InsufficientDataError when fewer than
    ``min_samples`` points are given or the series spans less than
    ``min_periods`` fitted periods (unless the fitted amplitude is
    negligible, where the span requirement is vacuous).
    """
    times = np.array([s.t for s in samples], dtype=float)
    values = np.array([s.x_mean[axis] for s in samples], dtype=float)
    n = len(times)
    if n < min_samples:
        raise InsufficientDataError(
            f"need at least {min_samples} samples, got {n}"
        )
    steps = np.diff(times)
    dt = float(np.mean(steps))
    if dt <= 0 or np.max(np.abs(steps - dt)) > 1e-6 * dt:
        raise ValueError("samples must be uniformly spaced in time")

    detrend = np.column_stack([np.ones_like(times), times])
    coef, *_ = np.linalg.lstsq(detrend, values, rcond=None)
    resid = values - detrend @ coef
    spectrum = np.abs(np.fft.rfft(resid))
    peak = 1 + int(np.argmax(spectrum[1:]))
    omega0 = 2.0 * np.pi * peak / (n * dt)

    bin_width = 2.0 * np.pi / (n * dt)
    result = minimize_scalar(
        lambda w: _sinusoid_fit(times, values, w)[0],
        bounds=(max(omega0 - bin_width, 0.25 * bin_width), omega0 + bin_width),
        method="bounded",
        options={"xatol": 1e-12 * omega0},
    )
    omega = float(result.x)
    _, coef = _sinusoid_fit(times, values, omega)
    amplitude = float(np.hypot(coef[0], coef[1]))
    phase = float(np.arctan2(-coef[1], coef[0]))

    scale = max(1e-300, float(np.max(np.abs(values))))
    span_periods = omega * (times[-1] - times[0]) / (2.0 * np.pi)
    if amplitude > 1e-9 * scale and span_periods < min_periods:
        required = min_periods * 2.0 * np.pi / omega
        raise InsufficientDataError(
            f"series spans {span_periods:.2f} fitted periods, need "
            f"{min_periods:.2f} (span >= {required:.3e})",
            required_span=required,
        )
    return ZBSignature(frequency=omega, amplitude=amplitude, phase=phase)
