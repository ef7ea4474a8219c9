import numpy as np

from negtrans import states
from negtrans.dynamics import TotalHamiltonian, make_scenario

A1 = np.array([[2, 1 + 1j, 0.5], [1 - 1j, 3, 4 + 2j], [0.5, 4 - 2j, 1]])
B1 = np.array([[3, 2, 0], [2, 1, 1], [0, 1, 4]], dtype=complex)
A2 = np.array([[1, 3, -0.25j], [3, 2, 0], [0.25j, 0, 3]])
B2 = np.array([[0.8, 2 - 1j, 1], [2 + 1j, 1, 2j], [1, -2j, 2]])
C_QUTRIT = np.array([[1, 1, 3], [1, 0, 2j], [3, -2j, 0.5]])
D_QUTRIT = np.array([[0.5, 2 + 1j, 8 + 3j], [2 - 1j, 1.5, -4], [8 - 3j, -4, 2.2]])
F_QUBIT = np.array([[0, 0.5 + 0.5j], [0.5 - 0.5j, 1]])
SX, SY, SZ = states.PAULI_X, states.PAULI_Y, states.PAULI_Z

RHO_A_QUTRIT = (0.6, 0.3, 0.1)
RHO_B_QUTRIT = (0.25, 0.4, 0.35)


def rand_herm(rng, d, scale=1.0):
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return scale * (x + x.conj().T) / 2


def rand_unitary(rng, d):
    q, r = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def rand_density(rng, d, rank=None, floor=0.0):
    rank = d if rank is None else rank
    w = rng.dirichlet(np.ones(rank)) * (1 - floor * rank) + floor
    w = np.concatenate([w, np.zeros(d - rank)])
    u = rand_unitary(rng, d)
    return states.validate_density((u * w) @ u.conj().T)


def qutrit_scenario(pure_b=True, terms=None, **free):
    rho_b = states.diagonal_density([1, 0, 0] if pure_b else RHO_B_QUTRIT)
    terms = ((A1, B1), (A2, B2)) if terms is None else terms
    return make_scenario(states.diagonal_density(RHO_A_QUTRIT), rho_b,
                         TotalHamiltonian(tuple(terms), **free))


def random_scenario(rng, d_A=None, d_B=None, n_terms=None, rank_b=None, free=True):
    d_A = d_A or int(rng.integers(2, 4))
    d_B = d_B or int(rng.integers(2, 4))
    n_terms = n_terms or int(rng.integers(1, 4))
    rank_b = rank_b or int(rng.integers(1, d_B + 1))
    terms = tuple((rand_herm(rng, d_A), rand_herm(rng, d_B)) for _ in range(n_terms))
    kw = {}
    if free:
        kw = dict(free_C=rand_herm(rng, d_A), free_D=rand_herm(rng, d_B))
    return make_scenario(rand_density(rng, d_A, floor=0.05), rand_density(rng, d_B, rank_b),
                         TotalHamiltonian(terms, **kw))


def random_family(rng, dim=None):
    """Random ``(H0, H1, H2)`` with degenerate clusters in H0.

    Distinct levels of H0 are at least 0.5 apart; H1 and H2 have unit
    spectral norm. In about half the clusters H1 is made to vanish on the
    eigenspace, exercising the fast path of the degenerate reduction.
    """
    dim = dim or int(rng.integers(2, 10))
    sizes = []
    while sum(sizes) < dim:
        sizes.append(int(min(rng.integers(1, 4), dim - sum(sizes))))
    levels = np.cumsum(0.5 + rng.uniform(0, 1, len(sizes)))
    w = np.repeat(levels, sizes)
    u = rand_unitary(rng, dim)
    h0 = (u * w) @ u.conj().T
    h1 = rand_herm(rng, dim)
    start = 0
    for s in sizes:
        if s > 1 and rng.random() < 0.5:
            block = u[:, start:start + s]
            p = block @ block.conj().T
            h1 = h1 - p @ h1 @ p
        start += s
    h1 /= np.linalg.norm(h1, 2)
    h2 = rand_herm(rng, dim)
    h2 /= np.linalg.norm(h2, 2)
    return h0, (h1 + h1.conj().T) / 2, h2
