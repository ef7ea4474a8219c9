"""Density matrices, Schmidt decompositions and Bloch vectors."""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import qmat
from .errors import DomainError, ValidationError

TRACE_TOL = 1e-10
NEG_EIG_TOL = 1e-10
DEFAULT_ZERO_TOL = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated density matrix. Build it with :func:`validate_density`."""

    mat: np.ndarray
    dim: int

    @property
    def eigenvalues(self):
        """Ascending eigenvalues with round-off negatives clipped to zero."""
        return np.clip(qmat.herm_eig(self.mat).eigenvalues, 0.0, None)

    def purity(self):
        return float(np.real(np.trace(self.mat @ self.mat)))

    def expect(self, op):
        return complex(np.trace(self.mat @ op))


def validate_density(m):
    """Check that ``m`` is a density matrix and wrap it.

    Raises
    ------
    ValidationError
        Naming the violated invariant: shape, Hermiticity, trace or
        positivity.
    """
    try:
        m = qmat.as_matrix(m)
    except ValueError as exc:
        raise ValidationError(f"shape: {exc}") from None
    if m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValidationError(f"shape: density matrix must be square, got {m.shape}")
    try:
        h = qmat.hermitize(m)
    except DomainError as exc:
        raise ValidationError(f"hermiticity: {exc}") from None
    tr = np.real(np.trace(h))
    if abs(tr - 1) > TRACE_TOL:
        raise ValidationError(f"trace: expected 1, got {tr:.12g}")
    lo = np.linalg.eigvalsh(h)[0]
    if lo < -NEG_EIG_TOL:
        raise ValidationError(f"positivity: eigenvalue {lo:.3g} is negative")
    h.setflags(write=False)
    return DensityMatrix(h, h.shape[0])


def diagonal_density(values):
    return validate_density(np.diag(np.asarray(values, dtype=complex)))


def pure_density(vec):
    v = np.asarray(vec, dtype=complex)
    v = v / np.linalg.norm(v)
    return validate_density(np.outer(v, v.conj()))


def _fix_phase(v):
    """Make the first non-negligible component of each column real positive."""
    v = v.copy()
    for j in range(v.shape[1]):
        k = int(np.argmax(np.abs(v[:, j]) > 1e-12))
        v[:, j] *= np.exp(-1j * np.angle(v[k, j]))
    return v


def _first_support(v):
    return [int(np.argmax(np.abs(v[:, j]) > 1e-12)) for j in range(v.shape[1])]


def sorted_eigensystem(rho):
    """Eigenvalues in descending order with deterministic eigenvectors."""
    w, v = qmat.herm_eig(rho)
    v = _fix_phase(v)
    first = _first_support(v)
    order = sorted(range(len(w)), key=lambda j: (-round(w[j], 12), first[j]))
    return w[order], v[:, order]


@dataclass(frozen=True, eq=False)
class SchmidtPair:
    """Schmidt form ``sum_i coeffs[i] |left_i> ⊗ |right_i>``."""

    coeffs: np.ndarray
    basis_left: np.ndarray
    basis_right: np.ndarray

    def state(self):
        amp = self.basis_left @ np.diag(self.coeffs) @ self.basis_right.T
        return amp.reshape(-1)

    def projector(self):
        psi = self.state()
        return np.outer(psi, psi.conj())

    @property
    def eigenvalues(self):
        return self.coeffs ** 2


def purify(rho_a):
    """Purify ``rho_a`` with an ancilla whose basis is the coordinate basis.

    ``coeffs`` are the square roots of the eigenvalues of ``rho_a`` (largest
    first) and ``basis_right`` holds the matching eigenvectors.
    """
    w, v = sorted_eigensystem(rho_a.mat)
    alpha = np.sqrt(np.clip(w, 0.0, None))
    alpha = alpha / np.linalg.norm(alpha)
    return SchmidtPair(alpha, np.eye(len(alpha), dtype=complex), v)


@dataclass(frozen=True, eq=False)
class SpectrumSplit:
    """Projectors onto the support (N) and kernel (D) of a density matrix."""

    n_nonzero: int
    proj_N: np.ndarray
    proj_D: np.ndarray
    basis: np.ndarray
    eigenvalues: np.ndarray
    zero_tol: float

    @property
    def kernel_basis(self):
        return self.basis[:, self.n_nonzero:]

    @property
    def support_basis(self):
        return self.basis[:, :self.n_nonzero]


def split_spectrum(rho_b, zero_tol=DEFAULT_ZERO_TOL):
    if zero_tol <= 0:
        raise DomainError("zero_tol must be positive")
    w, v = sorted_eigensystem(rho_b.mat)
    n = int(np.sum(w >= zero_tol))
    vn, vd = v[:, :n], v[:, n:]
    return SpectrumSplit(n, vn @ qmat.dagger(vn), vd @ qmat.dagger(vd), v, w, zero_tol)


class BlochVector(NamedTuple):
    ax: float
    ay: float
    az: float

    @property
    def r(self):
        return float(np.sqrt(self.ax ** 2 + self.ay ** 2 + self.az ** 2))


def bloch_to_density(b):
    if b.r > 1 + 1e-12:
        raise DomainError(f"Bloch radius {b.r:.6g} exceeds 1")
    m = (np.eye(2) + b.ax * PAULI_X + b.ay * PAULI_Y + b.az * PAULI_Z) / 2
    return validate_density(m)


def density_to_bloch(rho):
    if rho.dim != 2:
        raise DomainError(f"Bloch vectors describe qubits, got dimension {rho.dim}")
    return BlochVector(*(float(np.real(np.trace(rho.mat @ p)))
                         for p in (PAULI_X, PAULI_Y, PAULI_Z)))
