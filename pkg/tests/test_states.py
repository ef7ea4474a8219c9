import numpy as np
import pytest
from hypothesis import given, strategies as st

from negtrans import qmat, states
from negtrans.errors import DomainError, ValidationError
from negtrans.negativity import negativity, pure_negativity
from helpers import rand_density

seeds = st.integers(0, 2**32 - 1)


class TestValidateDensity:
    def test_valid(self):
        rho = states.validate_density(np.diag([0.6, 0.3, 0.1]))
        assert rho.dim == 3

    def test_trace_error(self):
        with pytest.raises(ValidationError, match="trace"):
            states.validate_density(np.diag([0.5, 0.6]))

    def test_hermiticity_error(self):
        with pytest.raises(ValidationError, match="hermiticity"):
            states.validate_density(np.array([[0, 1], [0, 0]]))

    def test_positivity_error(self):
        with pytest.raises(ValidationError, match="positivity"):
            states.validate_density(np.diag([1.5, -0.5]))

    def test_tiny_negative_eigenvalue_allowed(self):
        rho = states.validate_density(np.diag([1 + 5e-11, -5e-11]))
        assert rho.eigenvalues.min() == 0.0

    def test_immutable(self):
        rho = states.validate_density(np.eye(2) / 2)
        with pytest.raises(ValueError):
            rho.mat[0, 0] = 1


class TestPurify:
    def test_qubit(self):
        sp = states.purify(states.diagonal_density([0.8, 0.2]))
        np.testing.assert_allclose(sp.coeffs, [np.sqrt(0.8), np.sqrt(0.2)])

    def test_maximally_mixed(self):
        sp = states.purify(states.diagonal_density([0.5, 0.5]))
        np.testing.assert_allclose(sp.coeffs, [2 ** -0.5] * 2)

    def test_pure_input(self):
        sp = states.purify(states.diagonal_density([1, 0]))
        np.testing.assert_allclose(sp.coeffs, [1, 0])
        assert negativity(sp.projector(), (2, 2)).value == 0

    def test_ascending_input_sorted(self):
        sp = states.purify(states.diagonal_density([0.1, 0.3, 0.6]))
        np.testing.assert_allclose(sp.coeffs ** 2, [0.6, 0.3, 0.1])

    @given(seeds, st.integers(1, 4))
    def test_reconstruction(self, seed, d):
        rho = rand_density(np.random.default_rng(seed), d)
        sp = states.purify(rho)
        assert abs(np.sum(sp.coeffs ** 2) - 1) < 1e-10
        assert np.all(np.diff(sp.coeffs) <= 1e-15)
        red = qmat.partial_trace(sp.projector(), (d, d), 1)
        np.testing.assert_allclose(red, rho.mat, atol=1e-10)

    @given(seeds, st.integers(2, 4))
    def test_pure_negativity_matches_projector(self, seed, d):
        sp = states.purify(rand_density(np.random.default_rng(seed), d))
        direct = negativity(sp.projector(), (d, d)).value
        assert abs(pure_negativity(sp.coeffs) - direct) < 1e-9

    def test_degenerate_spectrum_basis_choice_irrelevant(self):
        rng = np.random.default_rng(3)
        q, _ = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
        rho = states.validate_density(q @ np.diag([0.4, 0.4, 0.2]) @ q.conj().T)
        sp = states.purify(rho)
        red = qmat.partial_trace(sp.projector(), (3, 3), 1)
        np.testing.assert_allclose(red, rho.mat, atol=1e-10)
        assert abs(negativity(sp.projector(), (3, 3)).value - pure_negativity(sp.coeffs)) < 1e-10


class TestSplitSpectrum:
    def test_pure(self):
        s = states.split_spectrum(states.diagonal_density([1, 0, 0]), 1e-10)
        assert s.n_nonzero == 1
        assert round(np.trace(s.proj_D).real) == 2

    def test_full_rank(self):
        s = states.split_spectrum(states.diagonal_density([0.25, 0.4, 0.35]), 1e-10)
        assert s.n_nonzero == 3
        assert np.allclose(s.proj_D, 0)

    def test_rank_two(self):
        assert states.split_spectrum(states.diagonal_density([0.5, 0.5, 0]), 1e-10).n_nonzero == 2

    def test_rejects_bad_tol(self):
        with pytest.raises(DomainError):
            states.split_spectrum(states.diagonal_density([1, 0]), 0.0)

    @given(seeds, st.integers(1, 4))
    def test_projector_invariants(self, seed, rank):
        rng = np.random.default_rng(seed)
        rho = rand_density(rng, 4, rank)
        s = states.split_spectrum(rho)
        np.testing.assert_allclose(s.proj_N + s.proj_D, np.eye(4), atol=1e-10)
        for p in (s.proj_N, s.proj_D):
            np.testing.assert_allclose(p @ p, p, atol=1e-10)
            np.testing.assert_allclose(p, p.conj().T, atol=1e-10)
            np.testing.assert_allclose(p @ rho.mat, rho.mat @ p, atol=1e-10)
        assert np.all(s.eigenvalues[:s.n_nonzero] >= s.zero_tol)
        assert np.all(s.eigenvalues[s.n_nonzero:] < s.zero_tol)


class TestBloch:
    def test_origin(self):
        np.testing.assert_allclose(states.bloch_to_density(states.BlochVector(0, 0, 0)).mat,
                                   np.eye(2) / 2)

    def test_z(self):
        np.testing.assert_allclose(states.bloch_to_density(states.BlochVector(0, 0, 0.6)).mat,
                                   np.diag([0.8, 0.2]), atol=1e-15)

    def test_outside_ball(self):
        with pytest.raises(DomainError):
            states.bloch_to_density(states.BlochVector(0.8, 0.8, 0))

    @given(seeds)
    def test_round_trip(self, seed):
        rng = np.random.default_rng(seed)
        v = rng.normal(size=3)
        v *= rng.uniform(0, 1) / np.linalg.norm(v)
        b = states.BlochVector(*v)
        rho = states.bloch_to_density(b)
        np.testing.assert_allclose(states.density_to_bloch(rho), b, atol=1e-12)
        np.testing.assert_allclose(np.linalg.eigvalsh(rho.mat), [(1 - b.r) / 2, (1 + b.r) / 2],
                                   atol=1e-12)
