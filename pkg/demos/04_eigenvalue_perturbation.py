"""
Degenerate eigenvalue perturbation
==================================

The engine behind the onset coefficients: eigenvalues of
``H0 + t H1 + t² H2`` to second order, including degenerate levels of
``H0``. Errors shrink like t³.
"""

import numpy as np

from negtrans.perturb import eig_perturb

rng = np.random.default_rng(0)


def herm(d):
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (x + x.conj().T) / 2


u, _ = np.linalg.qr(rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)))
h0 = (u * np.array([0.0, 0.0, 0.0, 1.0, 2.5])) @ u.conj().T  # threefold level
h1, h2 = herm(5), herm(5)

corr = eig_perturb((h0, h1, h2))
print("first-order shifts: ", np.round(corr.E1, 6))
print("second-order shifts:", np.round(corr.E2, 6))

for t in (1e-1, 1e-2, 1e-3):
    exact = np.linalg.eigvalsh(h0 + t * h1 + t * t * h2)
    err = np.max(np.abs(np.sort(corr.at(t)) - exact))
    print(f"t = {t:g}  max error = {err:.2e}  error/t^3 = {err / t ** 3:.3f}")
