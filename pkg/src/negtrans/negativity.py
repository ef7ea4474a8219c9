"""Negativity, the pure-state formula, PPT conclusiveness and the Gurvits ball."""
from itertools import combinations
from typing import NamedTuple

import numpy as np

from . import qmat

ZERO_EIG_TOL = 1e-12


class NegativityResult(NamedTuple):
    value: float
    pt_eigenvalues: np.ndarray
    negative_count: int


def negative_part(eigenvalues, tol=ZERO_EIG_TOL):
    """Absolute sum of eigenvalues below ``-tol`` and their count."""
    neg = eigenvalues[eigenvalues < -tol]
    return float(-np.sum(neg)) + 0.0, len(neg)


def negativity(rho, shape, check=True):
    """Negativity of a bipartite state across ``shape`` (first factor transposed).

    ``rho`` may be a :class:`~negtrans.states.DensityMatrix` or a raw array.
    With ``check`` the trace-norm form ``(||rho^T1||_1 - 1)/2`` is evaluated
    as well and must agree with the eigenvalue sum.
    """
    m = getattr(rho, "mat", rho)
    pt = qmat.partial_transpose(m, shape)
    lam = qmat.herm_eig(pt).eigenvalues
    value, count = negative_part(lam)
    if check:
        alt = (np.sum(np.abs(lam)) - np.real(np.trace(m))) / 2
        # sub-threshold eigenvalues are zeroed on one route only
        slack = 1e-10 + len(lam) * ZERO_EIG_TOL
        assert abs(alt - value) <= slack, (alt, value)
    return NegativityResult(value, lam, count)


def pure_negativity(coeffs):
    """``sum_{u<v} a_u a_v`` for Schmidt coefficients ``a``."""
    a = np.asarray(coeffs, dtype=float)
    norm = float(np.sum(a ** 2))
    if abs(norm - 1) > 1e-8:
        raise ValueError(f"Schmidt coefficients must be normalized, sum of squares is {norm}")
    return float(sum(x * y for x, y in combinations(a, 2)))


def is_ppt_conclusive(shape):
    """PPT decides separability exactly for 2x2 and 2x3 systems only."""
    d1, d2 = shape
    return d1 * d2 <= 6


class GurvitsCheck(NamedTuple):
    product_purity: float
    threshold: float
    certified: bool


def gurvits_separable(rho_a, rho_b):
    """Test whether ``rho_a ⊗ rho_b`` lies inside the largest separable ball.

    When certified, every state close enough stays separable, so negativity
    between the two factors can only appear after a finite time.
    """
    p = rho_a.purity() * rho_b.purity()
    threshold = 1.0 / (rho_a.dim * rho_b.dim - 1)
    return GurvitsCheck(p, threshold, p < threshold)
