"""Dense complex matrix kernel.

Matrices are plain ``numpy`` arrays of complex dtype. Every function here is
pure: inputs are never modified and no state is kept between calls.
"""
from typing import NamedTuple

import numpy as np

from .errors import DomainError, ShapeError

HERMITIAN_TOL = 1e-9


class BipartiteShape(NamedTuple):
    """Dimensions ``(d1, d2)`` of a two-factor tensor product space."""

    d1: int
    d2: int

    @property
    def dim(self):
        return self.d1 * self.d2

    def check(self, m):
        if self.d1 < 1 or self.d2 < 1:
            raise ShapeError(f"factor dimensions must be >= 1, got {tuple(self)}")
        m = np.asarray(m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeError(f"expected a square matrix, got shape {m.shape}")
        if m.shape[0] != self.dim:
            raise ShapeError(
                f"matrix dimension {m.shape[0]} does not match "
                f"{self.d1}x{self.d2}={self.dim}")


class HermitianEigensystem(NamedTuple):
    """Ascending eigenvalues and the unitary matrix of eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m):
    """Return ``m`` as a 2-D complex array (a copy is not forced)."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got {a.ndim} dimensions")
    return a


def dagger(m):
    return np.conj(np.asarray(m)).T


def allclose(a, b, atol):
    """Entrywise comparison with an explicit absolute tolerance."""
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= atol))


def anti_hermitian_norm(m):
    """Frobenius norm of the anti-Hermitian part ``(m - m^dagger)/2``."""
    m = np.asarray(m)
    return float(np.linalg.norm((m - dagger(m)) / 2))


def hermitize(m, tol=HERMITIAN_TOL):
    """Symmetrize ``m`` to ``(m + m^dagger)/2``, rejecting it if too far off.

    Raises
    ------
    DomainError
        If the anti-Hermitian part exceeds ``tol`` in Frobenius norm.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    err = anti_hermitian_norm(m)
    if err > tol:
        raise DomainError(f"matrix is not Hermitian (anti-Hermitian norm {err:.3g})")
    return (m + dagger(m)) / 2


def kron(a, b):
    """Kronecker product with ``(a⊗b)[i*m+k, j*n+l] = a[i,j] b[k,l]``."""
    return np.kron(np.asarray(a), np.asarray(b))


def kron_all(*factors):
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = np.kron(out, f)
    return out


def _split(m, shape):
    shape = BipartiteShape(*shape)
    shape.check(m)
    d1, d2 = shape
    return np.asarray(m).reshape(d1, d2, d1, d2), d1, d2


def partial_trace(m, shape, which):
    """Trace out factor ``which`` (1 or 2) of a bipartite operator."""
    t, d1, d2 = _split(m, shape)
    if which == 1:
        return np.einsum("ijil->jl", t)
    if which == 2:
        return np.einsum("ijkj->ik", t)
    raise ValueError(f"which must be 1 or 2, got {which!r}")


def partial_transpose(m, shape):
    """Transpose the indices of the first factor.

    Entry ``((i,j),(k,l))`` of the result is entry ``((k,j),(i,l))`` of ``m``.
    """
    t, d1, d2 = _split(m, shape)
    return t.transpose(2, 1, 0, 3).reshape(d1 * d2, d1 * d2)


def herm_eig(h):
    """Eigendecomposition of a Hermitian matrix (ascending eigenvalues)."""
    w, v = np.linalg.eigh(hermitize(h))
    return HermitianEigensystem(w, v)


def evolve_unitary(h, t):
    """Propagator ``exp(-i h t)`` built from the eigendecomposition of ``h``."""
    w, v = herm_eig(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def conjugate(u, m):
    """Return ``u m u^dagger``."""
    return u @ m @ dagger(u)


def trace_norm(m):
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(herm_eig(m).eigenvalues)))


def matrix_function(h, f):
    """Apply a scalar function to a Hermitian matrix through its spectrum."""
    w, v = herm_eig(h)
    return (v * f(w)) @ v.conj().T


def restrict(m, basis):
    """Matrix of ``m`` in the subspace spanned by the columns of ``basis``."""
    return dagger(basis) @ m @ basis
