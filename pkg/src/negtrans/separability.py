"""Explicit separable decompositions of the ancilla-B state.

When A and B interact through a single product term ``A ⊗ B`` (plus a free
term on B, and possibly one on A that commutes with ``A``), the ancilla-B
state is a mixture of product states at every time. The decomposition is
built branch by branch over the eigenvectors of ``A``.
"""
from dataclasses import dataclass

import numpy as np

from . import qmat, states
from .errors import NoCertificateError

ZERO_WEIGHT = 1e-14
COMMUTE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SeparableDecomposition:
    weights: np.ndarray
    left_states: tuple
    right_states: tuple

    def reconstruct(self):
        return sum(p * np.kron(l.mat, r.mat)
                   for p, l, r in zip(self.weights, self.left_states, self.right_states))


def _single_term(ham):
    if len(ham.interaction) != 1:
        raise NoCertificateError(
            f"need exactly one interaction term, got {len(ham.interaction)}")
    a, b = ham.interaction[0]
    c = ham.free_C
    if c is not None and np.linalg.norm(c @ a - a @ c) > COMMUTE_TOL:
        raise NoCertificateError("the free term on A does not commute with the interaction")
    return a, b, c


def product_decomposition(scenario, t):
    """Mixture ``sum_e p_e rho_Ã^e ⊗ rho_B^e(t)`` equal to the exact ``rho_ÃB(t)``.

    Raises
    ------
    NoCertificateError
        For several interaction terms or a free term on A that does not
        commute with the interaction. Entanglement is not implied.
    """
    ham = scenario.ham
    a, b, c = _single_term(ham)
    d_A, d_B = scenario.d_A, scenario.d_B
    omega = scenario.schmidt.projector()
    if c is not None:
        u = np.kron(np.eye(d_A), qmat.evolve_unitary(c, t))
        omega = u @ omega @ qmat.dagger(u)
    if ham.free_E is not None:
        u = np.kron(qmat.evolve_unitary(ham.free_E, t), np.eye(d_A))
        omega = u @ omega @ qmat.dagger(u)
    d_op = ham.free_D if ham.free_D is not None else np.zeros((d_B, d_B))
    h_vals, h_vecs = qmat.herm_eig(a)
    blocks = omega.reshape(d_A, d_A, d_A, d_A)
    rho_a = scenario.rho_a.mat
    weights, left, right = [], [], []
    for h, v in zip(h_vals, h_vecs.T):
        p = float(np.real(np.vdot(v, rho_a @ v)))
        if p < ZERO_WEIGHT:
            continue
        # <h| rho_ÃA |h> on the A factor
        branch = np.einsum("a,iajb,b->ij", v.conj(), blocks, v) / p
        u = qmat.evolve_unitary(h * b + d_op, t)
        weights.append(p)
        left.append(states.validate_density(branch))
        right.append(states.validate_density(u @ scenario.rho_b.mat @ qmat.dagger(u)))
    w = np.array(weights)
    return SeparableDecomposition(w / w.sum(), tuple(left), tuple(right))


def verify_certificate(decomp, exact):
    """Frobenius distance between the reconstructed and the exact state."""
    m = getattr(exact, "mat", exact)
    r = decomp.reconstruct()
    if r.shape != m.shape:
        raise ValueError(f"shape mismatch {r.shape} vs {m.shape}")
    return float(np.linalg.norm(r - m))
