"""Second-quantized picture of the trembling motion on a tiny Fock space.

Eight fermionic modes: electron (c) and positron (d) operators at the
paired momenta +-p, two spin labels each.  Occupation of mode i is bit i
of the basis index, so the space has dimension 256 and every operator is
an explicit dense matrix.  The Jordan-Wigner sign string over the lower
modes makes the anticommutation relations exact.

The current operators couple the one-electron sector to states with one
extra electron-positron pair; their raising and lowering parts shift the
free energy by exactly +-2E, which is the Heisenberg frequency of the
trembling motion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .reporting import CheckResult, make_check

N_MODES = 8
DIM = 1 << N_MODES

#: Mode order: electrons at +p then -p, positrons at +p then -p.
MODE_LABELS = (
    "c(+p,1)", "c(+p,2)", "c(-p,1)", "c(-p,2)",
    "d(+p,1)", "d(+p,2)", "d(-p,1)", "d(-p,2)",
)


@lru_cache(maxsize=1)
def _annihilators() -> tuple[np.ndarray, ...]:
    ops = []
    for i in range(N_MODES):
        a = np.zeros((DIM, DIM), dtype=complex)
        bit = 1 << i
        lower = bit - 1
        for b in range(DIM):
            if b & bit:
                # parity of occupied modes below i fixes the JW sign
                sign = -1.0 if bin(b & lower).count("1") % 2 else 1.0
                a[b ^ bit, b] = sign
        a.setflags(write=False)
        ops.append(a)
    return tuple(ops)


@dataclass(frozen=True)
class FockSpace:
    """The 8-mode electron/positron space at paired momenta +-p."""

    momentum: float
    m: float
    c: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.energy == 0.0:
            raise ValueError("p = 0 with m = 0 has no mode energy scale")

    @property
    def energy(self) -> float:
        return float(np.sqrt(self.momentum**2 * self.c**2 + self.m**2 * self.c**4))

    @property
    def dim(self) -> int:
        return DIM

    def index(self, label: str) -> int:
        try:
            return MODE_LABELS.index(label)
        except ValueError:
            raise ValueError(f"unknown mode {label!r}; modes are {MODE_LABELS}") from None

    def annihilator(self, label: str) -> np.ndarray:
        return _annihilators()[self.index(label)]

    def creator(self, label: str) -> np.ndarray:
        return _annihilators()[self.index(label)].conj().T

    def vacuum(self) -> np.ndarray:
        v = np.zeros(DIM, dtype=complex)
        v[0] = 1.0
        return v


def build_fock_space(p: float, m: float, c: float = 1.0, hbar: float = 1.0,
                     n_modes: int = N_MODES) -> FockSpace:
    """Construct the truncated space; only the 8-mode truncation exists."""
    if n_modes != N_MODES:
        raise ValueError(
            f"unsupported dimension: the truncation has exactly {N_MODES} modes"
        )
    return FockSpace(momentum=float(p), m=float(m), c=c, hbar=hbar)


def ladder(space: FockSpace, label: str, dagger: bool = False) -> np.ndarray:
    """Annihilation (or creation) matrix for one mode."""
    return space.creator(label) if dagger else space.annihilator(label)


def number_operator(space: FockSpace) -> np.ndarray:
    out = np.zeros((DIM, DIM), dtype=complex)
    for label in MODE_LABELS:
        out += space.creator(label) @ space.annihilator(label)
    return out


def charge_operator(space: FockSpace) -> np.ndarray:
    """Q = N_c - N_d in units of the electron charge."""
    out = np.zeros((DIM, DIM), dtype=complex)
    for label in MODE_LABELS:
        sign = 1.0 if label.startswith("c") else -1.0
        out += sign * space.creator(label) @ space.annihilator(label)
    return out


def fock_hamiltonian(space: FockSpace) -> np.ndarray:
    """Free Hamiltonian E * (all mode numbers): spectrum 0, E, ..., 8E."""
    return space.energy * number_operator(space)


@dataclass(frozen=True)
class ZBCurrent:
    """A trembling-motion current at fixed time.

    ``operator`` = raising + lowering is Hermitian; the raising part
    creates one electron-positron pair and satisfies [H, raising] =
    +2E raising, so the current oscillates at ``frequency`` = 2E/hbar in
    the Heisenberg picture.  ``polarization`` is the unit vector of the
    current direction (momentum axis taken along z).
    """

    kind: str
    polarization: np.ndarray
    frequency: float
    raising: np.ndarray
    lowering: np.ndarray

    @property
    def operator(self) -> np.ndarray:
        return self.raising + self.lowering


def zb_transverse_current(space: FockSpace, t: float = 0.0) -> ZBCurrent:
    """Transverse pair current: spin-flip pairs with a sqrt(2) weight.

    c sqrt(2) [cdag(p,2) ddag(-p,1) e^{i2Et/hbar} - c(-p,1) d(p,2)
    e^{-i2Et/hbar}] + h.c., with full amplitude at every momentum.
    """
    omega = 2.0 * space.energy / space.hbar
    phase = np.exp(1j * omega * t)
    raising = space.c * np.sqrt(2.0) * phase * (
        space.creator("c(+p,2)") @ space.creator("d(-p,1)")
        - space.creator("d(+p,2)") @ space.creator("c(-p,1)")
    )
    return ZBCurrent(
        kind="transverse",
        polarization=np.array([1.0, 1.0j, 0.0]) / np.sqrt(2.0),
        frequency=omega,
        raising=raising,
        lowering=raising.conj().T,
    )


def zb_longitudinal_current(space: FockSpace, t: float = 0.0) -> ZBCurrent:
    """Longitudinal pair current, suppressed by mc^2/E.

    c (mc^2/E) [cdag(p,1) ddag(-p,1) - cdag(p,2) ddag(-p,2)] e^{i2Et/hbar}
    + h.c.; it vanishes identically for a massless particle and carries
    full amplitude at p = 0.
    """
    energy = space.energy
    omega = 2.0 * energy / space.hbar
    phase = np.exp(1j * omega * t)
    weight = space.c * (space.m * space.c**2 / energy)
    raising = weight * phase * (
        space.creator("c(+p,1)") @ space.creator("d(-p,1)")
        - space.creator("c(+p,2)") @ space.creator("d(-p,2)")
    )
    return ZBCurrent(
        kind="longitudinal",
        polarization=np.array([0.0, 0.0, 1.0]),
        frequency=omega,
        raising=raising,
        lowering=raising.conj().T,
    )


def pair_cycle_audit(space: FockSpace) -> CheckResult:
    """Raise then lower a one-electron state through the pair current.

    The raising part adds one pair (particle number +2); applying the
    lowering part afterwards lands back entirely in the one-electron
    sector, with the surviving electron carrying the line forward.  Both
    currents also commute with the total charge.
    """
    current = zb_transverse_current(space)
    n_op = number_operator(space)
    q_op = charge_operator(space)

    start = space.creator("c(+p,2)") @ space.vacuum()
    raised = current.raising @ start
    raised_norm = float(np.linalg.norm(raised))
    n_after = float(np.real(np.vdot(raised, n_op @ raised))) / raised_norm**2
    delta_n = n_after - 1.0

    lowered = current.lowering @ raised
    lowered /= np.linalg.norm(lowered)
    one_electron = sum(
        abs(lowered[1 << i]) ** 2 for i in range(4)   # single c bit, no d bits
    )

    scale = max(1.0, float(np.abs(current.operator).max()))
    charge_comm = float(np.abs(
        q_op @ current.operator - current.operator @ q_op
    ).max()) / scale

    return make_check(
        name="pair_cycle_continuity",
        ref="pair creation/annihilation cycle keeps one electron line",
        measured=(delta_n, float(one_electron), charge_comm),
        expected=(2.0, 1.0, 0.0),
        tolerance=1e-12,
    )
