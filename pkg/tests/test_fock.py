import math

import numpy as np
import pytest

from zitterlab import fock
from zitterlab.linalg import anticommutator, commutator


@pytest.fixture(scope="module")
def space():
    return fock.build_fock_space(p=0.75, m=1.0)


def test_dimensions(space):
    assert fock.N_MODES == 8
    assert space.dim == 256
    assert len(fock.MODE_LABELS) == 8
    vac = space.vacuum()
    assert vac[0] == 1.0
    assert np.linalg.norm(vac) == 1.0


def test_energy_from_dispersion(space):
    assert np.isclose(space.energy, math.sqrt(1.0 + 0.75**2), rtol=1e-15)


def test_build_rejects_zero_energy_and_odd_mode_counts():
    with pytest.raises(ValueError):
        fock.build_fock_space(p=0.0, m=0.0)
    with pytest.raises(ValueError, match="unsupported"):
        fock.build_fock_space(p=0.5, m=1.0, n_modes=4)


def test_unknown_mode_label(space):
    with pytest.raises(ValueError, match="unknown mode"):
        space.annihilator("c(+p,3)")


def test_canonical_anticommutation_exact(space):
    ops = [space.annihilator(label) for label in fock.MODE_LABELS]
    for i, a in enumerate(ops):
        for j, b in enumerate(ops):
            assert np.abs(anticommutator(a, b)).max() == 0.0
            want = np.eye(space.dim) if i == j else 0.0
            assert np.abs(anticommutator(a, b.conj().T) - want).max() == 0.0


def test_number_and_charge_on_single_excitations(space):
    n_op = fock.number_operator(space)
    q_op = fock.charge_operator(space)
    vac = space.vacuum()
    assert np.abs(n_op @ vac).max() == 0.0
    for label in fock.MODE_LABELS:
        state = space.creator(label) @ vac
        assert np.isclose(np.vdot(state, n_op @ state).real, 1.0)
        charge = np.vdot(state, q_op @ state).real
        assert charge == (1.0 if label.startswith("c") else -1.0)


def test_hamiltonian_spectrum_is_integer_ladder(space):
    h = fock.fock_hamiltonian(space)
    evals = np.linalg.eigvalsh(h)
    levels, counts = np.unique(np.round(evals / space.energy), return_counts=True)
    assert np.array_equal(levels, np.arange(9))
    assert np.array_equal(counts, [math.comb(8, k) for k in range(9)])


def test_transverse_pair_amplitude(space):
    current = fock.zb_transverse_current(space)
    state = current.raising @ space.vacuum()
    assert np.isclose(np.linalg.norm(state), 2.0 * space.c, rtol=1e-14)
    n_op = fock.number_operator(space)
    assert np.isclose(np.vdot(state, n_op @ state).real,
                      2.0 * np.vdot(state, state).real, rtol=1e-13)
    q_op = fock.charge_operator(space)
    assert abs(np.vdot(state, q_op @ state)) < 1e-13


def test_longitudinal_pair_amplitude_tracks_rest_energy(space):
    current = fock.zb_longitudinal_current(space)
    state = current.raising @ space.vacuum()
    want = math.sqrt(2.0) * space.c / space.energy   # sqrt(2) c mc^2/E, m=c=1
    assert np.isclose(np.linalg.norm(state), want, rtol=1e-14)


def test_longitudinal_current_vanishes_for_light_mass():
    light = fock.build_fock_space(p=1.0, m=1e-8)
    op = fock.zb_longitudinal_current(light).operator
    assert np.abs(op).max() < 2e-8


def test_currents_hermitian_and_frequency(space):
    for build in (fock.zb_transverse_current, fock.zb_longitudinal_current):
        current = build(space, t=0.4)
        op = current.operator
        assert np.abs(op - op.conj().T).max() < 1e-14
        assert np.isclose(current.frequency, 2.0 * space.energy, rtol=1e-15)


def test_current_commutator_with_hamiltonian(space):
    h = fock.fock_hamiltonian(space)
    gap = 2.0 * space.energy
    for build in (fock.zb_transverse_current, fock.zb_longitudinal_current):
        current = build(space)
        for op, sign in ((current.raising, 1.0), (current.lowering, -1.0)):
            resid = commutator(h, op) - sign * gap * op
            assert np.abs(resid).max() < 1e-10 * gap * np.abs(op).max()


def test_charge_conservation(space):
    q_op = fock.charge_operator(space)
    for build in (fock.zb_transverse_current, fock.zb_longitudinal_current):
        assert np.abs(commutator(q_op, build(space).operator)).max() < 1e-13


def test_time_dependence_is_phase_rotation(space):
    t = 0.9
    still = fock.zb_transverse_current(space, t=0.0)
    moved = fock.zb_transverse_current(space, t=t)
    phase = np.exp(2j * space.energy * t)
    assert np.allclose(moved.raising, phase * still.raising, atol=1e-14)


def test_polarizations(space):
    trans = fock.zb_transverse_current(space)
    longi = fock.zb_longitudinal_current(space)
    assert np.isclose(np.linalg.norm(trans.polarization), 1.0)
    assert np.allclose(longi.polarization, [0.0, 0.0, 1.0])
    assert abs(np.vdot(trans.polarization, longi.polarization)) < 1e-15


def test_pair_cycle_audit(space):
    check = fock.pair_cycle_audit(space)
    assert check.passed
    # one pair created on top of the spectator electron, then removed
    assert check.measured[0] == pytest.approx(2.0, abs=1e-12)
    assert check.measured[1] == pytest.approx(1.0, abs=1e-12)
    assert abs(check.measured[2]) < 1e-12
