import math

import numpy as np
import pytest

from conftest import random_state
from infoquanta.dynamics import (FockSpace, build_hamiltonian, build_ladder, eigen_spectrum,
                                 evolve, expectation, ground_energy_analytic)
from infoquanta.entropy import PureState
from infoquanta.errors import DomainError, ShapeError, ValidationError
from infoquanta.infocore import PhysicalConstants, zeta


class TestLadder:
    def test_d2(self):
        np.testing.assert_array_equal(build_ladder(2).lowering, [[0, 1], [0, 0]])

    def test_d3(self):
        a = build_ladder(3).lowering
        assert a[0, 1] == 1.0 and a[1, 2] == math.sqrt(2)
        assert np.count_nonzero(a) == 2

    def test_commutator_pattern(self):
        for D in (2, 5, 16):
            ops = build_ladder(D)
            # oracle: explicit matrix products, not the helper
            comm = ops.lowering @ ops.raising - ops.raising @ ops.lowering
            expected = np.eye(D)
            expected[-1, -1] = 1 - D
            np.testing.assert_allclose(comm, expected, atol=1e-12)
        np.testing.assert_allclose(np.diag(build_ladder(16).commutator()), [1] * 15 + [-15], atol=1e-12)

    def test_raise_is_transpose(self):
        ops = build_ladder(7)
        np.testing.assert_array_equal(ops.raising, ops.lowering.T)

    @pytest.mark.parametrize("D", [0, 1, 2.5])
    def test_domain(self, D):
        with pytest.raises(DomainError):
            build_ladder(D)


class TestHamiltonian:
    def test_bare(self):
        H = build_hamiltonian(FockSpace(5, 2.0), 0.0, 0.0).matrix
        np.testing.assert_array_equal(H, np.diag([0, 2, 4, 6, 8]))

    def test_shift(self):
        z = zeta(0)
        H = build_hamiltonian(FockSpace(4, 1.0), z, 0.0).matrix
        np.testing.assert_allclose(np.diag(H), np.arange(4) + z, rtol=1e-15)

    def test_offdiagonal(self):
        H = build_hamiltonian(FockSpace(4, 1.0), 0.5, 0.3).matrix
        for m in range(3):
            assert H[m, m + 1] == pytest.approx(0.075 * math.sqrt(m + 1), rel=1e-14)
            assert H[m + 1, m] == H[m, m + 1]

    def test_symmetric_exactly(self):
        H = build_hamiltonian(FockSpace(32, 1.3), 0.7, 0.9).matrix
        assert np.array_equal(H, H.T)

    def test_negative_zeta(self):
        with pytest.raises(DomainError):
            build_hamiltonian(FockSpace(4, 1.0), -0.1, 0.1)

    def test_space_validation(self):
        with pytest.raises(DomainError):
            FockSpace(1, 1.0)
        with pytest.raises(DomainError):
            FockSpace(4, 0.0)


class TestSpectrum:
    def test_uncoupled(self):
        w, z = 1.7, 0.4
        E = eigen_spectrum(build_hamiltonian(FockSpace(10, w), z, 0.0))
        np.testing.assert_allclose(E, w * (np.arange(10) + z), rtol=1e-14)

    def test_displaced_ground(self):
        E = eigen_spectrum(build_hamiltonian(FockSpace(64, 1.0), 1.0, 0.4))
        assert E[0] == pytest.approx(0.96, abs=1e-8)

    def test_level_spacing(self):
        E = eigen_spectrum(build_hamiltonian(FockSpace(64, 1.0), 1.0, 0.4))
        np.testing.assert_allclose(np.diff(E[:17]), 1.0, atol=1e-6)

    def test_ascending(self):
        E = eigen_spectrum(build_hamiltonian(FockSpace(20, 1.0), 2.0, 0.5))
        assert np.all(np.diff(E) >= 0)

    @pytest.mark.parametrize("z, lam", [(1.0, 1.0), (2.0, 0.5), (0.5, 2.0), (1.0, 0.2)])
    def test_oracle_agreement(self, z, lam):
        assert 0.5 * lam * z <= 0.5
        E = eigen_spectrum(build_hamiltonian(FockSpace(64, 1.0), z, lam))
        assert E[0] == pytest.approx(ground_energy_analytic(1.0, z, lam), rel=1e-8)

    def test_truncation_convergence(self):
        for z, lam in [(1.0, 1.0), (1.0, 0.4)]:
            e32 = eigen_spectrum(build_hamiltonian(FockSpace(32, 1.0), z, lam))[0]
            e64 = eigen_spectrum(build_hamiltonian(FockSpace(64, 1.0), z, lam))[0]
            assert abs(e32 - e64) < 1e-10

    def test_si_units(self):
        si = PhysicalConstants.si()
        E = eigen_spectrum(build_hamiltonian(FockSpace(64, 1e9), 1.0, 0.4, si))
        assert E[0] == pytest.approx(ground_energy_analytic(1e9, 1.0, 0.4, si), rel=1e-8)


class TestAnalytic:
    def test_examples(self):
        assert ground_energy_analytic(2.0, 0.3, 0.0) == pytest.approx(0.6)
        assert ground_energy_analytic(1.0, 0.0, 0.7) == 0.0
        assert ground_energy_analytic(1.0, 1.0, 1.0) == pytest.approx(0.75)


class TestExpectation:
    def test_fock(self):
        n = build_ladder(5).number
        assert expectation(PureState.basis(5, 0), n) == 0.0
        assert expectation(PureState.basis(5, 3), n) == pytest.approx(3.0)

    def test_superposition(self):
        psi = PureState(np.array([1, 0, 1, 0]) / math.sqrt(2))
        assert expectation(psi, build_ladder(4).number) == pytest.approx(1.0)

    def test_non_hermitian(self):
        with pytest.raises(ValidationError):
            expectation(PureState.basis(3, 0), build_ladder(3).lowering)

    def test_shape(self):
        with pytest.raises(ShapeError):
            expectation(PureState.basis(3, 0), np.eye(4))


class TestEvolve:
    def test_t_zero(self, rng):
        model = build_hamiltonian(FockSpace(8, 1.0), 0.5, 0.3)
        psi = PureState(random_state(rng, 8))
        res = evolve(psi, model, 0.0, 3)
        for s in res.states:
            np.testing.assert_allclose(s.amplitudes, psi.amplitudes, atol=1e-12)

    def test_fock_state_number_constant(self):
        model = build_hamiltonian(FockSpace(8, 1.0), 0.2, 0.0)
        res = evolve(PureState.basis(8, 3), model, 10.0, 50)
        np.testing.assert_allclose(res.number, 3.0, atol=1e-12)

    def test_two_level_phase(self):
        model = build_hamiltonian(FockSpace(6, 1.0), 0.0, 0.0)
        psi = PureState(np.array([1, 1, 0, 0, 0, 0]) / math.sqrt(2))
        res = evolve(psi, model, 5.0, 20)
        np.testing.assert_allclose(res.number, 0.5, atol=1e-12)
        for t, s in zip(res.times, res.states):
            rel = s.amplitudes[1] / s.amplitudes[0]
            assert rel == pytest.approx(np.exp(-1j * t), abs=1e-10)

    def test_unitarity_and_energy(self, rng):
        model = build_hamiltonian(FockSpace(32, 1.0), 1.0, 0.8)
        psi = PureState(random_state(rng, 32))
        res = evolve(psi, model, 100.0, 200)
        norms = [np.linalg.norm(s.amplitudes) for s in res.states]
        np.testing.assert_allclose(norms, 1.0, atol=1e-10)
        E0 = expectation(psi, model.matrix)
        direct = np.array([expectation(s, model.matrix) for s in res.states])
        np.testing.assert_allclose(direct, E0, rtol=1e-9)
        np.testing.assert_allclose(res.energy, direct, rtol=1e-12)

    def test_errors(self):
        model = build_hamiltonian(FockSpace(4, 1.0), 0.1, 0.1)
        with pytest.raises(ShapeError):
            evolve(PureState.basis(3, 0), model, 1.0, 2)
        with pytest.raises(DomainError):
            evolve(PureState.basis(4, 0), model, -1.0, 2)
        with pytest.raises(DomainError):
            evolve(PureState.basis(4, 0), model, 1.0, 0)
