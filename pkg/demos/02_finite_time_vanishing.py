"""
Entanglement that waits
=======================

Two qutrits start in a product state with a full-rank state on B. A
perturbative onset is impossible here: negativity between A and B, and
between the ancilla and B, stays exactly zero for a finite time before it
appears.
"""

import numpy as np

from negtrans import scenarios
from negtrans.dynamics import trajectory

sf = scenarios.load("qutrit_mixed")
t = sf.time_grid.values()
tr = trajectory(sf.scenario, t)

for name in ("neg_AB", "neg_AtB", "neg_AtA"):
    col = tr[name]
    nonzero = np.flatnonzero(col > 1e-12)
    first = t[nonzero[0]] if nonzero.size else None
    print(f"{name:8s} first nonzero at t = {first}, max = {col.max():.4f}")

# coarse text plot of the ancilla-B column
for k in range(0, len(t), 40):
    print(f"t = {t[k]:4.2f} " + "#" * int(400 * tr["neg_AtB"][k]))
