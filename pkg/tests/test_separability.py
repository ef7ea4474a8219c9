import numpy as np
import pytest
from hypothesis import given, strategies as st

from negtrans import scenarios, states
from negtrans.dynamics import TotalHamiltonian, evolve_exact, exact_negativities, make_scenario
from negtrans.errors import NoCertificateError
from negtrans.negativity import negativity
from negtrans.separability import SeparableDecomposition, product_decomposition, verify_certificate
from helpers import (A1, B1, B2, C_QUTRIT, D_QUTRIT, qutrit_scenario, rand_density,
                     rand_herm)

T_GRID = np.linspace(0, 3, 50)


def _neg_atb(sc, t):
    return negativity(evolve_exact(sc, t).rho_AtB, (sc.d_A, sc.d_B)).value


def _residual(sc, t):
    return verify_certificate(product_decomposition(sc, t), evolve_exact(sc, t).rho_AtB)


def test_t0_is_product():
    sc = qutrit_scenario(pure_b=False, terms=((A1, B1),))
    dec = product_decomposition(sc, 0.0)
    prod = np.kron(sc.rho_at.mat, sc.rho_b.mat)
    assert np.linalg.norm(dec.reconstruct() - prod) < 1e-12


def test_qubit_product_free():
    sc = scenarios.load("qubit_product_free").scenario
    for t in T_GRID:
        assert _residual(sc, t) <= 1e-9
        assert _neg_atb(sc, t) <= 1e-12


def test_weights_are_eigenvalues_for_diagonal_a():
    lam = [0.6, 0.3, 0.1]
    sc = make_scenario(states.diagonal_density(lam), states.diagonal_density([1, 0, 0]),
                       TotalHamiltonian(((np.diag([1.0, -2.0, 0.5]), B1),)))
    dec = product_decomposition(sc, 0.7)
    np.testing.assert_allclose(np.sort(dec.weights), np.sort(lam), atol=1e-14)


def test_weights_sum_and_components_valid():
    sc = qutrit_scenario(pure_b=False, terms=((A1, B1),), free_D=D_QUTRIT)
    dec = product_decomposition(sc, 1.3)
    assert abs(dec.weights.sum() - 1) < 1e-10
    assert np.all(dec.weights >= 0)
    for rho in dec.left_states + dec.right_states:
        states.validate_density(rho.mat)


def test_self_residual_zero():
    sc = qutrit_scenario(pure_b=False, terms=((A1, B1),))
    dec = product_decomposition(sc, 0.0)
    assert verify_certificate(dec, dec.reconstruct()) < 1e-12


def test_corrupted_weight_detected():
    sc = qutrit_scenario(pure_b=False, terms=((A1, B1),), free_D=D_QUTRIT)
    t = 0.8
    dec = product_decomposition(sc, t)
    w = dec.weights.copy()
    w[0], w[1] = w[0] + 0.05, w[1] - 0.05
    bad = SeparableDecomposition(w, dec.left_states, dec.right_states)
    assert verify_certificate(bad, evolve_exact(sc, t).rho_AtB) > 1e-3


def test_shape_mismatch():
    sc = qutrit_scenario(pure_b=False, terms=((A1, B1),))
    with pytest.raises(ValueError):
        verify_certificate(product_decomposition(sc, 0.0), np.eye(4) / 4)


def test_refuses_two_terms():
    with pytest.raises(NoCertificateError):
        product_decomposition(qutrit_scenario(), 0.5)


def test_refuses_noncommuting_c():
    with pytest.raises(NoCertificateError):
        product_decomposition(qutrit_scenario(terms=((A1, B1),), free_C=C_QUTRIT), 0.5)


def test_negative_control_entangles():
    sc = scenarios.load("qutrit_free_A").scenario
    neg = exact_negativities(sc, scenarios.load("qutrit_free_A").time_grid.values())[:, 1]
    assert neg.max() > 0.005
    with pytest.raises(NoCertificateError):
        product_decomposition(sc, 1.0)


def test_commuting_c_and_e_accepted():
    a = np.diag([1.0, 2.0, -1.0])
    c = np.diag([0.3, -0.7, 2.0])
    rng = np.random.default_rng(4)
    sc = make_scenario(rand_density(rng, 3, floor=0.05), rand_density(rng, 3),
                       TotalHamiltonian(((a, B2),), free_C=c, free_D=D_QUTRIT,
                                        free_E=rand_herm(rng, 3)))
    for t in (0.3, 1.1, 2.5):
        assert _residual(sc, t) <= 1e-9
        assert _neg_atb(sc, t) <= 1e-12


def test_degenerate_interaction_operator():
    a = np.diag([1.0, 1.0, -1.0])
    sc = qutrit_scenario(pure_b=False, terms=((a, B1),))
    assert _residual(sc, 1.7) <= 1e-9


@given(seed=st.integers(0, 2**32 - 1), rank_b=st.integers(1, 3), d_B=st.integers(2, 3))
def test_independent_of_rho_b_determinant(seed, rank_b, d_B):
    rng = np.random.default_rng(seed)
    rank_b = min(rank_b, d_B)
    sc = make_scenario(rand_density(rng, 3, floor=0.05), rand_density(rng, d_B, rank_b),
                       TotalHamiltonian(((rand_herm(rng, 3), rand_herm(rng, d_B)),),
                                        free_D=rand_herm(rng, d_B)))
    t = rng.uniform(0, 3)
    assert _residual(sc, t) <= 1e-9
    assert _neg_atb(sc, t) <= 1e-12

