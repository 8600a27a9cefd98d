import math

import numpy as np
import pytest

from zitterlab import dirac
from zitterlab.linalg import anticommutator, commutator


def test_pauli_products():
    assert np.allclose(dirac.SIGMA_X @ dirac.SIGMA_Y, 1j * dirac.SIGMA_Z)
    for s in dirac.SIGMAS:
        assert np.allclose(s @ s, np.eye(2))
        assert np.allclose(s, s.conj().T)


def test_dirac_algebra_exact():
    gens = list(dirac.ALPHAS) + [dirac.BETA]
    for i, a in enumerate(gens):
        for j, b in enumerate(gens):
            want = 2.0 * np.eye(4) if i == j else np.zeros((4, 4))
            # entries are 0 and +-1, so the algebra closes exactly
            assert np.abs(anticommutator(a, b) - want).max() == 0.0


def test_matrices_are_read_only():
    with pytest.raises(ValueError):
        dirac.ALPHA_X[0, 0] = 5.0
    with pytest.raises(ValueError):
        dirac.BETA[1, 1] = 0.0


def test_axis_index_accepts_names_and_ints():
    assert dirac.axis_index("x") == 0
    assert dirac.axis_index("z") == 2
    assert dirac.axis_index(1) == 1
    with pytest.raises(ValueError):
        dirac.axis_index("w")
    with pytest.raises(ValueError):
        dirac.axis_index(3)


def test_hamiltonian_squares_to_dispersion():
    rng = np.random.default_rng(5)
    for _ in range(20):
        p = rng.uniform(-3, 3, size=3)
        m = float(rng.uniform(0.1, 2.0))
        h = dirac.free_hamiltonian(p, m)
        e2 = dirac.dispersion_energy(p, m) ** 2
        assert np.allclose(h @ h, e2 * np.eye(4), rtol=1e-14, atol=1e-14)
        assert np.allclose(h, h.conj().T)


def test_dispersion_energy_value():
    assert dirac.dispersion_energy(np.array([3.0, 4.0, 0.0]), 1.0) \
        == pytest.approx(math.sqrt(26.0), rel=1e-15)
    assert dirac.dispersion_energy(np.zeros(3), 2.0, c=3.0) \
        == pytest.approx(18.0, rel=1e-15)


def test_hamiltonian_validation():
    with pytest.raises(ValueError):
        dirac.free_hamiltonian(np.zeros(3), -1.0)
    with pytest.raises(ValueError):
        dirac.free_hamiltonian(np.zeros(2), 1.0)


def test_polynomial_reproduces_hamiltonian():
    poly = dirac.free_hamiltonian_polynomial(m=1.3, c=0.7)
    rng = np.random.default_rng(9)
    for _ in range(5):
        p = rng.uniform(-2, 2, size=3)
        assert np.allclose(poly.evaluate(p), dirac.free_hamiltonian(p, 1.3, 0.7))


def test_velocity_from_commutator_is_c_alpha():
    # dx/dt = (i/hbar)[H, x] = c alpha for the linear-in-p Hamiltonian
    for c in (1.0, 2.5):
        h = dirac.free_hamiltonian_polynomial(m=1.0, c=c)
        for axis in range(3):
            v = dirac.velocity_from_commutator(h, axis)
            assert v.is_constant
            assert np.allclose(v.as_matrix(), c * dirac.ALPHAS[axis])


def test_velocity_from_commutator_rejects_plain_matrix():
    with pytest.raises(TypeError):
        dirac.velocity_from_commutator(dirac.BETA, 0)


def test_polynomial_derivative_and_constant():
    h = dirac.free_hamiltonian_polynomial(m=1.0)
    assert not h.is_constant
    dx = h.derivative("x")
    assert dx.is_constant
    assert np.allclose(dx.as_matrix(), dirac.ALPHA_X)
    with pytest.raises(ValueError):
        h.as_matrix()


def test_spinors_reduce_to_basis_at_rest():
    spinors = dirac.plane_wave_spinors(np.zeros(3), m=1.0)
    assert [s.label for s in spinors] == ["u1", "u2", "v1", "v2"]
    assert np.allclose(
        np.column_stack([s.components for s in spinors]), np.eye(4)
    )


def test_spinors_orthonormal_eigenstates():
    rng = np.random.default_rng(12)
    for _ in range(8):
        p = rng.uniform(-2, 2, size=3)
        h = dirac.free_hamiltonian(p, m=1.0)
        u = np.column_stack(
            [s.components for s in dirac.plane_wave_spinors(p, m=1.0)]
        )
        assert np.allclose(u.conj().T @ u, np.eye(4), atol=1e-14)
        for s in dirac.plane_wave_spinors(p, m=1.0):
            assert np.allclose(
                h @ s.components,
                s.energy_sign * s.energy * s.components,
                atol=1e-13,
            )


def test_spinor_phase_continuous_through_p_zero():
    # the u1 <-> v2 velocity matrix element must keep its sign across the
    # grid, otherwise superpositions over momentum cancel spuriously
    for p in (-0.5, -0.05, 0.05, 0.5):
        spinors = dirac.plane_wave_spinors(np.array([p, 0.0, 0.0]), m=1.0)
        elem = spinors[0].components.conj() @ dirac.ALPHA_X \
            @ spinors[3].components
        # the element is m c^2 / E, positive on both sides of p = 0
        assert np.isclose(elem.real, 1.0 / math.sqrt(1.0 + p * p), atol=1e-14)
        assert abs(elem.imag) < 1e-14


def test_positive_branch_drift_velocity():
    # <u1| c alpha_x |u1> = c^2 p / E; value pinned at p = 0.3
    spinors = dirac.plane_wave_spinors(np.array([0.3, 0.0, 0.0]), m=1.0)
    drift = spinors[0].components.conj() @ dirac.ALPHA_X @ spinors[0].components
    assert np.isclose(drift.real, 0.2873478855663454, rtol=1e-13)
    assert abs(drift.imag) < 1e-15


def test_massless_rest_spinors_rejected():
    with pytest.raises(ValueError):
        dirac.plane_wave_spinors(np.zeros(3), m=0.0)


def test_projectors_split_the_spinor_basis():
    p = np.array([0.4, -0.1, 0.2])
    plus, minus = dirac.energy_projectors(p, m=1.0)
    assert np.allclose(plus @ plus, plus, atol=1e-14)
    assert np.allclose(plus @ minus, 0.0, atol=1e-14)
    assert np.allclose(plus + minus, np.eye(4))
    assert np.isclose(np.trace(plus).real, 2.0)
    for s in dirac.plane_wave_spinors(p, m=1.0):
        target = s.components if s.energy_sign > 0 else 0.0 * s.components
        assert np.allclose(plus @ s.components, target, atol=1e-13)


def test_oscillator_ladder_entries():
    a = dirac.oscillator_ladder(5)
    assert a.shape == (5, 5)
    assert np.isclose(a[2, 3], math.sqrt(3.0))
    # [a, a^dag] = 1 on the interior, truncation artifact at the top
    comm = commutator(a, a.conj().T)
    assert np.allclose(np.diag(comm)[:-1], 1.0)
    assert np.isclose(comm[-1, -1], 1.0 - 5.0)


def test_kinetic_momentum_commutator_sign():
    # [pi_x, pi_y] = +i e hbar B for pi = p - eA in the symmetric gauge
    b, n = 0.3, 12
    pi_x, pi_y = dirac.kinetic_momentum_operators(b, n, e=1.0, hbar=1.0)
    assert np.allclose(pi_x, pi_x.conj().T)
    assert np.allclose(pi_y, pi_y.conj().T)
    comm = commutator(pi_x, pi_y)
    interior = np.diag(comm)[:-1]
    assert np.allclose(interior, 1j * b, atol=1e-14)


def test_sigma_pi_squared_check_passes():
    check = dirac.sigma_pi_squared_check(b_field=0.05, n_levels=24)
    assert check.passed
    assert check.measured[0] < 1e-12
    assert "boundary" in check.note
    with pytest.raises(ValueError):
        dirac.sigma_pi_squared_check(0.05, n_levels=2)
