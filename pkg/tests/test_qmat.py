import numpy as np
import pytest
from hypothesis import given, strategies as st

from negtrans import qmat
from negtrans.errors import DomainError, ShapeError
from helpers import SX, SZ, rand_herm

seeds = st.integers(0, 2**32 - 1)
BELL = np.array([1, 0, 0, 1]) / np.sqrt(2)


class TestKron:
    def test_identity(self):
        np.testing.assert_array_equal(qmat.kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_pauli_entries(self):
        k = qmat.kron(SX, SZ)
        assert k.shape == (4, 4)
        assert (k[0, 2], k[1, 3], k[2, 0], k[3, 1]) == (1, -1, 1, -1)
        assert np.count_nonzero(k) == 4

    def test_shape(self):
        assert qmat.kron(np.ones((3, 3)), np.ones((3, 3))).shape == (9, 9)


class TestPartialTrace:
    def test_product_state(self):
        rng = np.random.default_rng(0)
        r1, r2 = rand_herm(rng, 2), rand_herm(rng, 3)
        r1 /= np.trace(r1)
        np.testing.assert_allclose(qmat.partial_trace(np.kron(r1, r2), (2, 3), 1), r2, atol=1e-12)

    def test_bell(self):
        rho = np.outer(BELL, BELL)
        np.testing.assert_allclose(qmat.partial_trace(rho, (2, 2), 2), np.eye(2) / 2, atol=1e-15)

    @given(seeds)
    def test_trace_preserved(self, seed):
        rng = np.random.default_rng(seed)
        m = rand_herm(rng, 6)
        for which in (1, 2):
            assert abs(np.trace(qmat.partial_trace(m, (2, 3), which)) - np.trace(m)) < 1e-10

    @given(seeds)
    def test_adjoint_of_kron(self, seed):
        rng = np.random.default_rng(seed)
        x = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        m = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        lhs = np.trace(np.kron(x, np.eye(2)) @ m)
        rhs = np.trace(x @ qmat.partial_trace(m, (3, 2), 2))
        assert abs(lhs - rhs) < 1e-10

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            qmat.partial_trace(np.eye(6), (2, 2), 1)


class TestPartialTranspose:
    def test_product(self):
        rng = np.random.default_rng(1)
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(3, 3))
        np.testing.assert_allclose(qmat.partial_transpose(np.kron(a, b), (2, 3)),
                                   np.kron(a.T, b), atol=1e-15)

    def test_bell_spectrum(self):
        pt = qmat.partial_transpose(np.outer(BELL, BELL), (2, 2))
        np.testing.assert_allclose(np.linalg.eigvalsh(pt), [-0.5, 0.5, 0.5, 0.5], atol=1e-14)

    def test_index_rule(self):
        m = np.arange(36, dtype=complex).reshape(6, 6)
        pt = qmat.partial_transpose(m, (2, 3))
        for i in range(2):
            for j in range(3):
                for k in range(2):
                    for l in range(3):
                        assert pt[i * 3 + j, k * 3 + l] == m[k * 3 + j, i * 3 + l]

    @given(seeds)
    def test_involution_trace_hermiticity(self, seed):
        rng = np.random.default_rng(seed)
        m = rand_herm(rng, 6)
        pt = qmat.partial_transpose(m, (3, 2))
        np.testing.assert_allclose(qmat.partial_transpose(pt, (3, 2)), m)
        assert abs(np.trace(pt) - np.trace(m)) < 1e-12
        assert qmat.anti_hermitian_norm(pt) < 1e-12


class TestHermEig:
    def test_diagonal(self):
        np.testing.assert_allclose(qmat.herm_eig(np.diag([0.6, 0.3, 0.1])).eigenvalues,
                                   [0.1, 0.3, 0.6])

    def test_pauli(self):
        np.testing.assert_allclose(qmat.herm_eig(SX).eigenvalues, [-1, 1])

    @given(seeds)
    def test_reconstruction(self, seed):
        h = rand_herm(np.random.default_rng(seed), 9)
        es = qmat.herm_eig(h)
        assert np.linalg.norm(h - es.reconstruct()) <= 1e-10 * max(1, np.linalg.norm(h))
        v = es.eigenvectors
        np.testing.assert_allclose(v.conj().T @ v, np.eye(9), atol=1e-10)
        assert np.all(np.diff(es.eigenvalues) >= 0)

    def test_rejects_non_hermitian(self):
        with pytest.raises(DomainError):
            qmat.herm_eig(np.array([[0, 1], [0, 0]]))

    def test_symmetrizes_small_error(self):
        h = SX + 1e-11j * np.array([[1, 0], [0, 0]])
        np.testing.assert_allclose(qmat.herm_eig(h).eigenvalues, [-1, 1])


class TestEvolveUnitary:
    def test_zero_time(self):
        np.testing.assert_allclose(qmat.evolve_unitary(SX, 0.0), np.eye(2), atol=1e-14)

    def test_diagonal(self):
        np.testing.assert_allclose(qmat.evolve_unitary(np.diag([1.0, 2.0]), np.pi),
                                   np.diag([-1, 1]), atol=1e-14)

    @given(seeds)
    def test_unitary_and_group_law(self, seed):
        rng = np.random.default_rng(seed)
        h = rand_herm(rng, 5)
        u = qmat.evolve_unitary(h, 0.7)
        assert np.linalg.norm(u @ u.conj().T - np.eye(5)) <= 1e-10
        t1, t2 = rng.uniform(-2, 2, 2)
        np.testing.assert_allclose(qmat.evolve_unitary(h, t1) @ qmat.evolve_unitary(h, t2),
                                   qmat.evolve_unitary(h, t1 + t2), atol=1e-9)


class TestTraceNorm:
    def test_density(self):
        assert abs(qmat.trace_norm(np.diag([0.2, 0.8])) - 1) < 1e-15

    def test_bell_pt(self):
        pt = qmat.partial_transpose(np.outer(BELL, BELL), (2, 2))
        assert abs(qmat.trace_norm(pt) - 2) < 1e-12

    def test_indefinite(self):
        assert qmat.trace_norm(np.diag([3.0, -4.0])) == 7

    def test_rejects_non_hermitian(self):
        with pytest.raises(DomainError):
            qmat.trace_norm(np.array([[0, 2], [0, 0]]))
