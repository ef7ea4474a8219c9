"""Tripartite Hamiltonians, exact evolution and perturbative density matrices.

The tripartite space is ordered ``Ã ⊗ A ⊗ B``. The ancilla Ã purifies A and
only feels the free Hamiltonian ``E``; A and B interact through

    H_tot = C ⊗ I + sum_p A_p ⊗ B_p + I ⊗ D.
"""
import csv
import io
import json
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import qmat, states
from .errors import ShapeError, ValidationError
from .negativity import negativity

MIN_SCHMIDT = 1e-6

BIPARTITIONS = ("AB", "AtB", "AtA")

TRAJECTORY_COLUMNS = (
    "neg_AB", "neg_AtB", "neg_AtA", "neg_At_AB", "neg_B_AtA",
    "purity_A", "purity_B", "purity_AB",
)


@dataclass(frozen=True, eq=False)
class TotalHamiltonian:
    """Interaction pairs ``(A_p, B_p)`` plus optional free parts C, D and E.

    ``C`` acts on A, ``D`` on B and ``E`` on the ancilla Ã.
    """

    interaction: tuple
    free_C: Optional[np.ndarray] = None
    free_D: Optional[np.ndarray] = None
    free_E: Optional[np.ndarray] = None
    d_A: int = field(init=False)
    d_B: int = field(init=False)

    def __post_init__(self):
        pairs = tuple((qmat.hermitize(a), qmat.hermitize(b)) for a, b in self.interaction)
        blocks = [x for x in (self.free_C, self.free_D, self.free_E) if x is not None]
        if not pairs and not blocks:
            raise ShapeError("cannot infer dimensions of an empty Hamiltonian")
        d_A = pairs[0][0].shape[0] if pairs else None
        d_B = pairs[0][1].shape[0] if pairs else None
        for a, b in pairs:
            if a.shape[0] != d_A or b.shape[0] != d_B:
                raise ShapeError("interaction terms have inconsistent dimensions")
        free = {}
        for name in ("free_C", "free_D", "free_E"):
            m = getattr(self, name)
            if m is None:
                free[name] = None
                continue
            m = qmat.hermitize(m)
            d = m.shape[0]
            if name == "free_D":
                d_B = d if d_B is None else d_B
                ok = d == d_B
            else:
                d_A = d if d_A is None else d_A
                ok = d == d_A
            if not ok:
                raise ShapeError(f"{name} has dimension {d}, inconsistent with the terms")
            free[name] = m
        if d_A is None or d_B is None:
            raise ShapeError("dimensions of A and B must both be determined")
        object.__setattr__(self, "interaction", pairs)
        for name, m in free.items():
            object.__setattr__(self, name, m)
        object.__setattr__(self, "d_A", d_A)
        object.__setattr__(self, "d_B", d_B)

    def absorbed(self):
        """Pair list with the free parts folded in as ``(C, I)`` and ``(I, D)``."""
        pairs = []
        if self.free_C is not None:
            pairs.append((self.free_C, np.eye(self.d_B, dtype=complex)))
        pairs.extend(self.interaction)
        if self.free_D is not None:
            pairs.append((np.eye(self.d_A, dtype=complex), self.free_D))
        return pairs

    def total(self):
        """The AB Hamiltonian ``H_tot`` as a ``d_A d_B`` square matrix."""
        h = np.zeros((self.d_A * self.d_B,) * 2, dtype=complex)
        for a, b in self.absorbed():
            h += np.kron(a, b)
        return h

    def replace(self, **changes):
        kw = dict(interaction=self.interaction, free_C=self.free_C,
                  free_D=self.free_D, free_E=self.free_E)
        kw.update(changes)
        return TotalHamiltonian(**kw)


@dataclass(frozen=True, eq=False)
class TripartiteScenario:
    """Initial state ``|ω><ω| ⊗ rho_B`` together with the Hamiltonian."""

    schmidt: states.SchmidtPair
    rho_b: states.DensityMatrix
    ham: TotalHamiltonian

    @property
    def d_A(self):
        return self.ham.d_A

    @property
    def d_B(self):
        return self.ham.d_B

    @property
    def dims(self):
        return (self.d_A, self.d_A, self.d_B)

    @property
    def rho_a(self):
        v = self.schmidt.basis_right
        return states.validate_density((v * self.schmidt.eigenvalues) @ v.conj().T)

    @property
    def rho_at(self):
        u = self.schmidt.basis_left
        return states.validate_density((u * self.schmidt.eigenvalues) @ u.conj().T)

    def rho_tri(self):
        return np.kron(self.schmidt.projector(), self.rho_b.mat)

    def with_hamiltonian(self, ham):
        return TripartiteScenario(self.schmidt, self.rho_b, ham)


def make_scenario(rho_a, rho_b, ham):
    """Purify ``rho_a`` and check every block has matching dimensions.

    ``rho_a`` must be full rank: every Schmidt coefficient is at least 1e-6.
    """
    if rho_a.dim != ham.d_A or rho_b.dim != ham.d_B:
        raise ShapeError(
            f"states have dimensions ({rho_a.dim}, {rho_b.dim}) but the "
            f"Hamiltonian acts on ({ham.d_A}, {ham.d_B})")
    schmidt = states.purify(rho_a)
    if schmidt.coeffs.min() < MIN_SCHMIDT:
        raise ValidationError(
            "rho_A must be full rank (smallest Schmidt coefficient "
            f"{schmidt.coeffs.min():.3g} < {MIN_SCHMIDT})")
    return TripartiteScenario(schmidt, rho_b, ham)


def build_total(scenario):
    """``E ⊗ I ⊗ I + I ⊗ H_tot`` on the full tripartite space."""
    ham = scenario.ham
    d_A, d_B = ham.d_A, ham.d_B
    h = np.kron(np.eye(d_A), ham.total())
    if ham.free_E is not None:
        h += np.kron(ham.free_E, np.eye(d_A * d_B))
    return h


def reduce_tri(rho_tri, dims):
    """Reduced states ``(rho_AB, rho_AtB, rho_AtA)`` of a tripartite matrix."""
    dt, da, db = dims
    rho_ab = qmat.partial_trace(rho_tri, (dt, da * db), 1)
    rho_atb = np.einsum("iakjal->ikjl", rho_tri.reshape(dt, da, db, dt, da, db))
    rho_atb = rho_atb.reshape(dt * db, dt * db)
    rho_ata = qmat.partial_trace(rho_tri, (dt * da, db), 2)
    return rho_ab, rho_atb, rho_ata


class ExactState(NamedTuple):
    rho_AB: states.DensityMatrix
    rho_AtB: states.DensityMatrix
    rho_AtA: states.DensityMatrix
    rho_tri: states.DensityMatrix


class _Propagator:
    """Eigendecomposition of a Hamiltonian reused for many time points."""

    def __init__(self, h):
        self.w, self.v = qmat.herm_eig(h)

    def __call__(self, t):
        return (self.v * np.exp(-1j * self.w * t)) @ self.v.conj().T


def _evolved(rho0, prop, t):
    u = prop(t)
    return u @ rho0 @ u.conj().T


def evolve_exact(scenario, t):
    """Exact state at time ``t`` and its three bipartite reductions."""
    rho = _evolved(scenario.rho_tri(), _Propagator(build_total(scenario)), t)
    parts = reduce_tri(rho, scenario.dims) + (rho,)
    return ExactState(*(states.validate_density(p) for p in parts))


def exact_negativities(scenario, times):
    """Negativities of A;B, Ã;B and Ã;A at each time, as an array ``(n, 3)``."""
    rho0 = scenario.rho_tri()
    prop = _Propagator(build_total(scenario))
    d_A, d_B = scenario.d_A, scenario.d_B
    shapes = ((d_A, d_B), (d_A, d_B), (d_A, d_A))
    out = np.empty((len(times), 3))
    for n, t in enumerate(times):
        reduced = reduce_tri(_evolved(rho0, prop, t), scenario.dims)
        out[n] = [negativity(r, s, check=False).value for r, s in zip(reduced, shapes)]
    return out


class PerturbedDensity(NamedTuple):
    """Orders 0, 1 and 2 of the small-time expansion of a density matrix."""

    order0: np.ndarray
    order1: np.ndarray
    order2: np.ndarray
    label: str

    def at(self, t):
        return self.order0 + t * self.order1 + t * t * self.order2


def perturbed_rho_tri(scenario):
    """Expansion of the tripartite state, with ``E`` left out (it cannot matter)."""
    h = np.kron(np.eye(scenario.d_A), scenario.ham.total())
    rho = scenario.rho_tri()
    first = 1j * (rho @ h - h @ rho)
    h2 = h @ h
    second = h @ rho @ h - 0.5 * (h2 @ rho + rho @ h2)
    return PerturbedDensity(rho, first, second, "tri")


class _EigenFrame(NamedTuple):
    alpha: np.ndarray
    lam_a: np.ndarray
    lam_b: np.ndarray
    v_a: np.ndarray
    v_b: np.ndarray
    a_ops: np.ndarray  # (P, d_A, d_A), entries <a_j|A_p|a_l>
    b_ops: np.ndarray  # (P, d_B, d_B), entries <b_u|B_p|b_v>
    b_coord: np.ndarray


def _eigen_frame(scenario):
    alpha = scenario.schmidt.coeffs
    v_a = scenario.schmidt.basis_right
    lam_b, v_b = states.sorted_eigensystem(scenario.rho_b.mat)
    lam_b = np.clip(lam_b, 0.0, None)
    pairs = scenario.ham.absorbed()
    a_ops = np.array([qmat.restrict(a, v_a) for a, _ in pairs]).reshape(-1, len(alpha), len(alpha))
    b_ops = np.array([qmat.restrict(b, v_b) for _, b in pairs]).reshape(-1, len(lam_b), len(lam_b))
    b_coord = np.array([b for _, b in pairs]).reshape(-1, len(lam_b), len(lam_b))
    return _EigenFrame(alpha, alpha ** 2, lam_b, v_a, v_b, a_ops, b_ops, b_coord)


def _rho_ab_orders(f):
    la, lb, A, B = f.lam_a, f.lam_b, f.a_ops, f.b_ops
    d_A, d_B = len(la), len(lb)
    lab = np.outer(la, lb)  # [k, u]
    first = 1j * np.einsum("pkl,puv,kulv->kulv", A, B,
                           lab[:, :, None, None] - lab[None, None, :, :])
    AA = np.einsum("pkm,qml->pqkml", A, A)
    BB = np.einsum("put,qtv->pqutv", B, B)
    second = np.einsum("pqkml,pqutv,mt->kulv", AA, BB, lab)
    pair = np.einsum("pqkml,pqutv->kulv", AA, BB)
    second -= 0.5 * pair * (lab[:, :, None, None] + lab[None, None, :, :])
    n = d_A * d_B
    return first.reshape(n, n), second.reshape(n, n)


def _rho_atb_orders(f):
    a, lb, A, B = f.alpha, f.lam_b, f.a_ops, f.b_ops
    d_A, d_B = len(a), len(lb)
    aa = np.outer(a, a)
    left = aa[None] * A.transpose(0, 2, 1)  # alpha_i alpha_j A_p[j, i]
    right = B * (lb[:, None] - lb[None, :])[None]
    first = 1j * np.einsum("pij,puv->iujv", left, right)
    # <a_j| A_q A_p |a_i> and <a_j| A_p A_q |a_i>
    qp = np.einsum("qjm,pmi->pqij", A, A)
    pq = np.einsum("pjm,qmi->pqij", A, A)
    sandwich = np.einsum("put,t,qtv->pquv", B, lb, B)
    prod = np.einsum("put,qtv->pquv", B, B) * (lb[:, None] + lb[None, :])
    second = np.einsum("pqij,pquv->iujv", qp, sandwich)
    second -= 0.5 * np.einsum("pqij,pquv->iujv", pq, prod)
    second *= aa[:, None, :, None]
    n = d_A * d_B
    return first.reshape(n, n), second.reshape(n, n)


def _rho_ata_orders(f, rho_b):
    a, A = f.alpha, f.a_ops
    d = len(a)
    aa = np.outer(a, a)
    eye = np.eye(d)
    mean_b = np.real(np.einsum("puv,vu->p", f.b_coord, rho_b))
    first = np.einsum("p,pjl,ik->ikjl", mean_b, A, eye)
    first -= np.einsum("p,pki,jl->ikjl", mean_b, A, eye)
    first *= 1j * aa[:, None, :, None]
    c = np.einsum("puv,vw,qwu->pq", f.b_coord, rho_b, f.b_coord)  # Tr[B_p rho B_q]
    AA = np.einsum("pkm,qml->pqkl", A, A)
    second = np.einsum("pq,pki,qjl->ikjl", c, A, A)
    second -= 0.5 * np.einsum("pq,qpki,jl->ikjl", c, AA, eye)
    second -= 0.5 * np.einsum("pq,qpjl,ik->ikjl", c, AA, eye)
    second *= aa[:, None, :, None]
    n = d * d
    return first.reshape(n, n), second.reshape(n, n)


def perturbed_rho_bipartite(scenario, which):
    """Expansion of a bipartite reduction from closed-form index sums.

    The sums are evaluated in the eigenbases of ``rho_A`` and ``rho_B`` and
    rotated back to coordinates. ``which`` is ``"AB"``, ``"AtB"`` or ``"AtA"``.
    """
    f = _eigen_frame(scenario)
    d_A, d_B = scenario.d_A, scenario.d_B
    if which == "AB":
        first, second = _rho_ab_orders(f)
        frame = np.kron(f.v_a, f.v_b)
        zeroth = np.kron(scenario.rho_a.mat, scenario.rho_b.mat)
    elif which == "AtB":
        first, second = _rho_atb_orders(f)
        frame = np.kron(np.eye(d_A), f.v_b)
        zeroth = np.kron(scenario.rho_at.mat, scenario.rho_b.mat)
    elif which == "AtA":
        first, second = _rho_ata_orders(f, scenario.rho_b.mat)
        frame = np.kron(np.eye(d_A), f.v_a)
        zeroth = scenario.schmidt.projector()
        return PerturbedDensity(zeroth, qmat.conjugate(frame, first),
                                qmat.conjugate(frame, second), which)
    else:
        raise ValueError(f"unknown bipartition {which!r}")
    return PerturbedDensity(zeroth, qmat.conjugate(frame, first),
                            qmat.conjugate(frame, second), which)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Time samples of negativities and purities, one named column each."""

    t: np.ndarray
    columns: dict

    def __post_init__(self):
        for name, col in self.columns.items():
            if len(col) != len(self.t):
                raise ShapeError(f"column {name} has {len(col)} samples, expected {len(self.t)}")

    def __getitem__(self, name):
        return self.t if name == "t" else self.columns[name]

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        names = list(self.columns)
        w.writerow(["t"] + names)
        for n, t in enumerate(self.t):
            w.writerow([f"{v:.12g}" for v in [t] + [self.columns[c][n] for c in names]])
        return buf.getvalue()

    def to_json(self):
        data = {"t": [float(x) for x in self.t]}
        data.update({k: [float(x) for x in v] for k, v in self.columns.items()})
        return json.dumps(data, indent=1)


def trajectory(scenario, t_grid):
    """Sample every bipartite negativity and the purities over ``t_grid``.

    ``neg_B_AtA`` transposes the ÃA factor instead of B, which leaves the
    negativity unchanged.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size == 0:
        raise ValueError("t_grid must be nonempty")
    d_A, d_B = scenario.d_A, scenario.d_B
    rho0 = scenario.rho_tri()
    prop = _Propagator(build_total(scenario))
    cols = {c: np.empty(len(t_grid)) for c in TRAJECTORY_COLUMNS}
    for n, t in enumerate(t_grid):
        rho = _evolved(rho0, prop, t)
        ab, atb, ata = reduce_tri(rho, scenario.dims)
        cols["neg_AB"][n] = negativity(ab, (d_A, d_B)).value
        cols["neg_AtB"][n] = negativity(atb, (d_A, d_B)).value
        cols["neg_AtA"][n] = negativity(ata, (d_A, d_A)).value
        cols["neg_At_AB"][n] = negativity(rho, (d_A, d_A * d_B)).value
        cols["neg_B_AtA"][n] = negativity(rho, (d_A * d_A, d_B)).value
        rho_a = qmat.partial_trace(ab, (d_A, d_B), 2)
        rho_b = qmat.partial_trace(ab, (d_A, d_B), 1)
        cols["purity_A"][n] = np.real(np.vdot(rho_a, rho_a))
        cols["purity_B"][n] = np.real(np.vdot(rho_b, rho_b))
        cols["purity_AB"][n] = np.real(np.vdot(ab, ab))
    return Trajectory(t_grid, cols)
