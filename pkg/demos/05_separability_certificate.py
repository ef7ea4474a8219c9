"""
A product interaction cannot entangle the ancilla with B
========================================================

For ``A ⊗ B`` plus a free term on B, the ancilla-B state is an explicit
mixture of product states at every time. The certificate is rebuilt and
compared with the exact state.
"""

import numpy as np

from negtrans import scenarios
from negtrans.dynamics import evolve_exact, exact_negativities
from negtrans.errors import NoCertificateError
from negtrans.negativity import negativity
from negtrans.separability import product_decomposition, verify_certificate

sc = scenarios.load("qubit_product_free").scenario
for t in np.linspace(0, 3, 7):
    exact = evolve_exact(sc, t).rho_AtB
    dec = product_decomposition(sc, t)
    print(f"t = {t:.1f}  weights = {np.round(dec.weights, 4)}  "
          f"residual = {verify_certificate(dec, exact):.1e}  "
          f"negativity = {negativity(exact, (2, 2)).value:.1e}")

###############################################################################
# A free term on A that does not commute with the interaction breaks the
# argument, and the ancilla does become entangled with B.

ctrl = scenarios.load("qutrit_free_A")
neg = exact_negativities(ctrl.scenario, ctrl.time_grid.values())[:, 1]
print("non-commuting free term, max ancilla-B negativity:", round(neg.max(), 4))
try:
    product_decomposition(ctrl.scenario, 1.0)
except NoCertificateError as exc:
    print("no certificate:", exc)
