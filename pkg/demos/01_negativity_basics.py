"""
Negativity of bipartite states
==============================

The partial transpose of a separable state is positive. Negative
eigenvalues of the partial transpose therefore witness entanglement, and
their absolute sum is the negativity.
"""

import numpy as np

from negtrans import qmat, states
from negtrans.negativity import gurvits_separable, negativity, pure_negativity

# a Bell state has negativity 1/2
bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
rho = states.pure_density(bell)
res = negativity(rho, (2, 2))
print("Bell state negativity:", res.value)
print("partial transpose spectrum:", np.round(res.pt_eigenvalues, 12))

# for a pure state the value follows from the Schmidt coefficients
alpha = np.sqrt([0.8, 0.2])
print("from Schmidt coefficients:", pure_negativity(alpha))

# mixing with white noise eventually kills it (Werner state, p <= 1/3)
for p in (1.0, 0.6, 1 / 3, 0.2):
    werner = p * rho.mat + (1 - p) * np.eye(4) / 4
    print(f"p = {p:.3f}  negativity = {negativity(werner, (2, 2)).value:.6f}")

# partial trace and partial transpose act on explicit factor shapes
print("reduced state of the Bell pair:\n", qmat.partial_trace(rho.mat, (2, 2), 1).real)

###############################################################################
# A product state close enough to the maximally mixed state stays separable
# under small perturbations. The purity test below says whether the product
# lies inside that ball.

rho_a = states.diagonal_density([0.6, 0.3, 0.1])
rho_b = states.diagonal_density([0.25, 0.4, 0.35])
g = gurvits_separable(rho_a, rho_b)
print(f"product purity {g.product_purity:.4f} vs threshold {g.threshold:.4f}:",
      "inside" if g.certified else "outside")
