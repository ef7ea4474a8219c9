"""Second-order perturbation of eigenvalues and of negativities.

The three negativity coefficients computed here are the t² terms of the
small-time expansion of:

* ``susceptibility``: negativity between A and B (needs a singular rho_B),
* ``transmissibility``: negativity between the ancilla Ã and B,
* ``vulnerability``: negativity between Ã and A (always <= 0 for a
  single product interaction).

The first-order terms vanish for all of them; reports include a computed
first-order coefficient so that this can be checked.
"""
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import qmat, states
from .dynamics import exact_negativities, perturbed_rho_bipartite
from .errors import DomainError, GapError, RegimeError
from .negativity import negative_part, negativity, pure_negativity

GAP_TOL = 1e-8
CLUSTER_TOL = 1e-8
LAMBDA1_TOL = 1e-10
F_NEG_TOL = 1e-12
MIN_RHO_EIG = 1e-8
SQRT_CLIP = 1e-14
FD_STEPS = (1e-2, 5e-3, 2.5e-3)


class EigPerturbInput(NamedTuple):
    """Matrix family ``H(t) = H0 + t H1 + t² H2``."""

    H0: np.ndarray
    H1: np.ndarray
    H2: np.ndarray

    @classmethod
    def checked(cls, h0, h1, h2):
        h0, h1, h2 = (qmat.hermitize(h) for h in (h0, h1, h2))
        if not h0.shape == h1.shape == h2.shape:
            raise DomainError("H0, H1 and H2 must have the same shape")
        return cls(h0, h1, h2)


class EigenCorrections(NamedTuple):
    """Per-branch expansion ``E0 + t E1 + t² E2``."""

    E0: np.ndarray
    E1: np.ndarray
    E2: np.ndarray

    def at(self, t):
        return self.E0 + t * self.E1 + t * t * self.E2


def eig_perturb_nondegenerate(inp):
    """Rayleigh-Schrodinger corrections for a simple spectrum.

    Raises
    ------
    GapError
        If two unperturbed eigenvalues are closer than 1e-8; use
        :func:`eig_perturb_degenerate` then.
    """
    h0, h1, h2 = EigPerturbInput.checked(*inp)
    w, v = np.linalg.eigh(h0)
    if len(w) > 1 and np.min(np.diff(w)) <= GAP_TOL:
        raise GapError(f"spectrum gap {np.min(np.diff(w)):.3g} too small for "
                       "non-degenerate perturbation; use the degenerate path")
    g1 = qmat.restrict(h1, v)
    g2 = qmat.restrict(h2, v)
    e1 = np.real(np.diag(g1))
    diff = w[:, None] - w[None, :]
    np.fill_diagonal(diff, np.inf)
    e2 = np.real(np.diag(g2)) + np.sum(np.abs(g1) ** 2 / diff, axis=1)
    return EigenCorrections(w, e1, e2)


def _projector_basis(p):
    p = np.asarray(p, dtype=complex)
    if qmat.anti_hermitian_norm(p) > 1e-9 or np.linalg.norm(p @ p - p) > 1e-8:
        raise DomainError("eigenspace projector must be Hermitian and idempotent")
    w, v = np.linalg.eigh((p + qmat.dagger(p)) / 2)
    return v[:, w > 0.5]


def _clusters(values, tol):
    """Group sorted values into runs whose neighbours differ by <= tol."""
    groups, start = [], 0
    for k in range(1, len(values) + 1):
        if k == len(values) or values[k] - values[k - 1] > tol:
            groups.append(np.arange(start, k))
            start = k
    return groups


def _resolvent(h0, level, tol):
    """``M = sum over eigenvalues E_q != level of P_q / (level - E_q)``."""
    w, v = np.linalg.eigh(h0)
    keep = np.abs(w - level) > tol
    return (v[:, keep] / (level - w[keep])) @ qmat.dagger(v[:, keep])


def eig_perturb_degenerate(inp, eigenspace_projector, tol=CLUSTER_TOL):
    """Corrections for the branches that emanate from one eigenspace of H0.

    The first-order shifts are the eigenvalues of ``P H1 P``. When these all
    vanish, the second-order shifts are the eigenvalues of
    ``P (H1 M H1 + H2) P``; otherwise the same reduction is applied
    separately inside each eigenspace of ``P H1 P``.

    Returns
    -------
    EigenCorrections
        One entry per branch, ordered by (E1, E2).
    """
    h0, h1, h2 = EigPerturbInput.checked(*inp)
    q = _projector_basis(eigenspace_projector)
    r = q.shape[1]
    if r == 0:
        empty = np.zeros(0)
        return EigenCorrections(empty, empty, empty)
    level = float(np.real(np.trace(qmat.restrict(h0, q)))) / r
    m = _resolvent(h0, level, tol)
    second = h1 @ m @ h1 + h2
    lam1 = qmat.restrict(h1, q)
    if np.linalg.norm(lam1) <= LAMBDA1_TOL:
        e2 = np.linalg.eigvalsh(qmat.hermitize(qmat.restrict(second, q), 1e-7))
        return EigenCorrections(np.full(r, level), np.zeros(r), e2)
    w1, v1 = np.linalg.eigh(qmat.hermitize(lam1))
    e1, e2 = [], []
    for idx in _clusters(w1, tol):
        sub = q @ v1[:, idx]
        e1.extend(w1[idx])
        e2.extend(np.linalg.eigvalsh(qmat.hermitize(qmat.restrict(second, sub), 1e-7)))
    return EigenCorrections(np.full(r, level), np.array(e1), np.array(e2))


def eig_perturb(inp, tol=CLUSTER_TOL):
    """Corrections for the whole spectrum, clustering degenerate levels."""
    h0, h1, h2 = EigPerturbInput.checked(*inp)
    w, v = np.linalg.eigh(h0)
    parts = []
    for idx in _clusters(w, tol):
        p = v[:, idx] @ qmat.dagger(v[:, idx])
        parts.append(eig_perturb_degenerate((h0, h1, h2), p, tol))
    return EigenCorrections(*(np.concatenate(x) for x in zip(*parts)))


# ---------------------------------------------------------------- moments

def ucov(bp, bq, rho):
    """Unsymmetrized covariance ``Tr[bp rho bq] - Tr[bp rho] Tr[bq rho]``."""
    r = getattr(rho, "mat", rho)
    return complex(np.trace(bp @ r @ bq) - np.trace(bp @ r) * np.trace(bq @ r))


def cov(bp, bq, rho):
    return float(np.real(ucov(bp, bq, rho) + ucov(bq, bp, rho)) / 2)


def variance(a_op, rho_a):
    return float(np.real(ucov(a_op, a_op, rho_a)))


def _sqrt_density(rho):
    return qmat.matrix_function(getattr(rho, "mat", rho),
                                lambda w: np.sqrt(np.where(w < SQRT_CLIP, 0.0, w)))


def amplitude_variance_GA(a_op, rho_a):
    """``Tr[√ρ] Tr[A √ρ A] - Tr[√ρ A]²``, an upper bound on the variance."""
    s = _sqrt_density(rho_a)
    val = np.trace(s) * np.trace(a_op @ s @ a_op) - np.trace(s @ a_op) ** 2
    return float(np.real(val))


def fragility_2(a_op, rho_a):
    """``-Tr[[A, ρ]²] / 2``."""
    r = getattr(rho_a, "mat", rho_a)
    c = a_op @ r - r @ a_op
    return float(-np.real(np.trace(c @ c)) / 2)


def renyi_second_derivative(var_a, var_b, n=2.0):
    """Second time derivative of the order-n Rényi entropy for pure A and B."""
    if n <= 1:
        raise DomainError(f"Renyi order must exceed 1, got {n}")
    if var_a < 0 or var_b < 0:
        raise DomainError("variances must be non-negative")
    return 4.0 * var_a * var_b / (n - 1)


# ----------------------------------------------------------- F-operators

def _inverse_density(rho):
    w, v = qmat.herm_eig(rho)
    if w[0] < MIN_RHO_EIG:
        raise DomainError(f"near-singular density matrix (min eigenvalue {w[0]:.3g}); "
                          "second-order formulas need it to be invertible")
    return (v / w) @ qmat.dagger(v)


def _pair_blocks(rho1, ops1, kernel, rho2, ops2):
    """Blocks ``(F_1^{pq}, F_2^{pq})`` for every ordered pair ``(p, q)``.

    ``F_1^{pq} = conj(X_q ρ1 X_p - ρ1 X_p ρ1⁻¹ X_q ρ1)`` and
    ``F_2^{pq} = K† Y_p ρ2 Y_q K`` with ``K`` spanning the kernel of ρ2.
    """
    inv = _inverse_density(rho1)
    n = len(ops1)
    f1 = [[None] * n for _ in range(n)]
    f2 = [[None] * n for _ in range(n)]
    for p in range(n):
        for q in range(n):
            xp, xq = ops1[p], ops1[q]
            f1[p][q] = np.conj(xq @ rho1 @ xp - rho1 @ xp @ inv @ xq @ rho1)
            f2[p][q] = qmat.dagger(kernel) @ ops2[p] @ rho2 @ ops2[q] @ kernel
    return f1, f2


def _sum_kron(left, right):
    n = len(left)
    out = np.kron(left[0][0], right[0][0]) * 0
    for p in range(n):
        for q in range(n):
            out = out + np.kron(left[p][q], right[p][q])
    return out


@dataclass(frozen=True, eq=False)
class FOperators:
    """Second-order operators whose negative spectra give S and T.

    ``f_AB`` and ``f_AtB`` act on ``H_A ⊗ ker(rho_B)`` (resp. with Ã for A)
    expressed in the basis ``coordinates ⊗ kernel_basis``.
    """

    f_AB: np.ndarray
    f_AtB: np.ndarray
    F_A: list
    F_B: list
    F_At: list
    r_A: np.ndarray
    kernel_basis: np.ndarray


def _ancilla_blocks(scenario, pairs):
    """``F_Ã^{pq}`` as the entrywise product of a commutator with ``R_A``."""
    alpha = scenario.schmidt.coeffs
    v = scenario.schmidt.basis_right
    r_a = np.outer(alpha, alpha)
    rot = [qmat.restrict(a, v) for a, _ in pairs]
    n = len(pairs)
    blocks = [[(rot[q] @ rot[p] - rot[p] @ rot[q]) * r_a for q in range(n)] for p in range(n)]
    return blocks, r_a


def ancilla_blocks_matrix_form(scenario):
    """``F_Ã^{pq}`` from its operator form, used to cross-check the entrywise one."""
    alpha = scenario.schmidt.coeffs
    v = scenario.schmidt.basis_right
    e = scenario.schmidt.basis_left
    pairs = scenario.ham.absorbed()
    out = []
    for ap, _ in pairs:
        row = []
        for aq, _ in pairs:
            comm = qmat.restrict(ap @ aq - aq @ ap, v)  # <a_j|.|a_i> is comm[j, i]
            m = sum(alpha[i] * alpha[j] * comm[j, i] * np.outer(e[:, i], e[:, j].conj())
                    for i in range(len(alpha)) for j in range(len(alpha)))
            row.append(np.conj(m))
        out.append(row)
    return out


def f_operators(scenario, zero_tol=states.DEFAULT_ZERO_TOL):
    """Build the second-order operators for the A;B and Ã;B bipartitions.

    Raises
    ------
    DomainError
        If rho_A is (nearly) singular.
    RegimeError
        If rho_B is full rank: negativity with B then stays zero for a
        finite time and neither S nor T applies.
    """
    rho_a = scenario.rho_a.mat
    rho_b = scenario.rho_b.mat
    split = states.split_spectrum(scenario.rho_b, zero_tol)
    kernel = split.kernel_basis
    if kernel.shape[1] == 0:
        raise RegimeError("rho_B is full rank: negativity with B vanishes for a finite "
                          "time, so S and T are not applicable")
    pairs = scenario.ham.absorbed()
    f_a, f_b = _pair_blocks(rho_a, [a for a, _ in pairs], kernel, rho_b, [b for _, b in pairs])
    f_at, r_a = _ancilla_blocks(scenario, pairs)
    f_ab = qmat.hermitize(_sum_kron(f_a, f_b))
    f_atb = qmat.hermitize(_sum_kron(f_at, f_b))
    return FOperators(f_ab, f_atb, f_a, f_b, f_at, r_a, kernel)


def negative_spectrum_sum(m, tol=F_NEG_TOL):
    """``(||m||_1 - Tr m) / 2``, i.e. the absolute sum of negative eigenvalues."""
    return negative_part(qmat.herm_eig(m).eigenvalues, tol)[0]


# ------------------------------------------------------------ reports

class PerturbationReport(NamedTuple):
    bipartition: str
    n0: float
    n1: float
    n2: Optional[float]
    formula_path: str
    f_ops: Optional[FOperators] = None


def pt_family(scenario, which):
    """Partially transposed orders 0, 1, 2 of a bipartite reduction."""
    d_A, d_B = scenario.d_A, scenario.d_B
    shape = (d_A, d_A) if which == "AtA" else (d_A, d_B)
    pert = perturbed_rho_bipartite(scenario, which)
    return EigPerturbInput(*(qmat.partial_transpose(m, shape)
                             for m in (pert.order0, pert.order1, pert.order2)))


def _kernel_projector(scenario, zero_tol):
    split = states.split_spectrum(scenario.rho_b, zero_tol)
    return np.kron(np.eye(scenario.d_A), split.proj_D)


def first_order_kernel(scenario, which, zero_tol=states.DEFAULT_ZERO_TOL):
    """First-order negativity coefficient for A;B or Ã;B.

    The zero eigenvalues of the initial partial transpose move at first
    order by the eigenvalues of H1 restricted to the kernel.
    """
    fam = pt_family(scenario, which)
    q = _projector_basis(_kernel_projector(scenario, zero_tol))
    if q.shape[1] == 0:
        return 0.0
    lam1 = np.linalg.eigvalsh(qmat.hermitize(qmat.restrict(fam.H1, q), 1e-7))
    return negative_part(lam1, F_NEG_TOL)[0]


def susceptibility(scenario, zero_tol=states.DEFAULT_ZERO_TOL):
    """Second-order negativity coefficient between A and B."""
    f = f_operators(scenario, zero_tol)
    n0 = negativity(np.kron(scenario.rho_a.mat, scenario.rho_b.mat),
                    (scenario.d_A, scenario.d_B)).value
    n1 = first_order_kernel(scenario, "AB", zero_tol)
    return PerturbationReport("A;B", n0, n1, negative_spectrum_sum(f.f_AB),
                              "susceptibility", f)


def transmissibility(scenario, zero_tol=states.DEFAULT_ZERO_TOL):
    """Second-order negativity coefficient between the ancilla and B."""
    f = f_operators(scenario, zero_tol)
    n0 = negativity(np.kron(scenario.rho_at.mat, scenario.rho_b.mat),
                    (scenario.d_A, scenario.d_B)).value
    n1 = first_order_kernel(scenario, "AtB", zero_tol)
    return PerturbationReport("At;B", n0, n1, negative_spectrum_sum(f.f_AtB),
                              "transmissibility", f)


def susceptibility_by_eigenvalues(scenario, which="AB", zero_tol=states.DEFAULT_ZERO_TOL):
    """S (or T for ``which="AtB"``) from degenerate eigenvalue perturbation."""
    fam = pt_family(scenario, which)
    corr = eig_perturb_degenerate(fam, _kernel_projector(scenario, zero_tol))
    return negative_part(corr.E2, F_NEG_TOL)[0], corr


def vulnerability(scenario):
    """Second-order negativity coefficient between the ancilla and A.

    Valid whatever the rank of rho_B; rho_A must be invertible.
    """
    rho_a = scenario.rho_a
    _inverse_density(rho_a.mat)
    s = _sqrt_density(rho_a)
    tr_s = np.trace(s)
    total = 0j
    pairs = scenario.ham.absorbed()
    for ap, bp in pairs:
        for aq, bq in pairs:
            g = tr_s * np.trace(ap @ s @ aq) - np.trace(s @ ap) * np.trace(s @ aq)
            total += ucov(bp, bq, scenario.rho_b) * g
    v = -0.5 * total
    assert abs(v.imag) <= 1e-10 * max(1.0, abs(v.real)), v
    alpha = scenario.schmidt.coeffs
    n0 = pure_negativity(alpha)
    return PerturbationReport("At;A", n0, first_order_ancilla(scenario), float(v.real),
                              "vulnerability")


def first_order_ancilla(scenario):
    """First-order shift of the Ã;A negativity: minus the trace of H1 over
    the negative eigenspace of the initial partial transpose."""
    fam = pt_family(scenario, "AtA")
    w, v = np.linalg.eigh(fam.H0)
    neg = v[:, w < -F_NEG_TOL]
    return float(-np.real(np.trace(qmat.restrict(fam.H1, neg)))) + 0.0


def vulnerability_by_eigenvalues(scenario):
    """V from the perturbed spectrum of the Ã;A partial transpose."""
    fam = pt_family(scenario, "AtA")
    corr = eig_perturb(fam)
    return float(-np.sum(corr.E2[corr.E0 < -F_NEG_TOL]))


# -------------------------------------------------- delocalized B;ÃA

class DelocalizationReport(NamedTuple):
    trajectory: object
    b_ata_n2: Optional[float]
    b_ata_path: str


def b_ancilla_coefficient(scenario, zero_tol=states.DEFAULT_ZERO_TOL):
    """Second-order B;ÃA coefficient with the roles of A and B swapped.

    Returns ``(value, path)``. With a full-rank rho_B the susceptibility
    formula applies with B as the invertible factor and ``I - rho_ÃA`` as
    the kernel projector. With a pure rho_B and a single interaction term
    the Rényi (n=2) second derivative is returned. Otherwise the value is
    ``None`` and the path ``"undefined"``.
    """
    rho_b = scenario.rho_b
    split = states.split_spectrum(rho_b, zero_tol)
    d_A, d_B = scenario.d_A, scenario.d_B
    if split.n_nonzero == d_B and split.eigenvalues.min() >= MIN_RHO_EIG:
        omega = scenario.schmidt.projector()
        w, v = np.linalg.eigh(omega)
        kernel = v[:, w < 0.5]
        lift = lambda a: np.kron(np.eye(d_A), a)
        pairs = scenario.ham.absorbed()
        f1, f2 = _pair_blocks(rho_b.mat, [b for _, b in pairs], kernel, omega,
                              [lift(a) for a, _ in pairs])
        return negative_spectrum_sum(qmat.hermitize(_sum_kron(f1, f2))), "susceptibility"
    if split.n_nonzero == 1 and len(scenario.ham.interaction) == 1:
        a, b = scenario.ham.interaction[0]
        val = renyi_second_derivative(variance(a, scenario.rho_a), variance(b, rho_b), 2.0)
        return val, "renyi"
    return None, "undefined"


def delocalization_report(scenario, t_grid, zero_tol=states.DEFAULT_ZERO_TOL):
    from .dynamics import trajectory
    value, path = b_ancilla_coefficient(scenario, zero_tol)
    return DelocalizationReport(trajectory(scenario, t_grid), value, path)


# ------------------------------------------------------ finite differences

def _richardson(values, steps):
    """Eliminate the h and h² error terms from estimates at h, h/2, h/4."""
    d0, d1, d2 = values
    h0, h1, h2 = steps
    if not (np.isclose(h0, 2 * h1) and np.isclose(h1, 2 * h2)):
        raise ValueError("Richardson steps must halve successively")
    r0 = 2 * d1 - d0
    r1 = 2 * d2 - d1
    return (4 * r1 - r0) / 3


def fd_second_derivative(fn, steps=FD_STEPS):
    """One-sided second derivative at 0 of a function with zero slope there.

    Uses ``2 (f(h) - f(0)) / h²`` with Richardson extrapolation. One-sided
    because negativity is only smooth for t >= 0 near the onset.
    """
    f0 = fn(0.0)
    return _richardson([2 * (fn(h) - f0) / h ** 2 for h in steps], steps)


def fd_first_derivative(fn, steps=FD_STEPS):
    f0 = fn(0.0)
    return _richardson([(fn(h) - f0) / h for h in steps], steps)


def exact_negativity_fn(scenario, which):
    col = {"AB": 0, "AtB": 1, "AtA": 2}[which]
    return lambda t: exact_negativities(scenario, [t])[0, col]
