"""
Moving and hiding entanglement with SWAP
========================================

Under the SWAP Hamiltonian the ancilla's entanglement with A moves entirely
to B by t = π/4. Early on, B is entangled with the ancilla-A pair while
being unentangled with either part alone.
"""

import numpy as np

from negtrans import scenarios
from negtrans.dynamics import trajectory
from negtrans.perturb import delocalization_report

sf = scenarios.load("qubit_swap")
t = np.array([0.0, 0.1, 0.2, 0.3, 0.5, np.pi / 4])
tr = trajectory(sf.scenario, t)
print("     t   A;B    At;B   At;A   At;AB  B;AtA")
for k, tk in enumerate(t):
    print(f"{tk:6.3f} " + " ".join(f"{tr[c][k]:.4f}" for c in
                                    ("neg_AB", "neg_AtB", "neg_AtA", "neg_At_AB", "neg_B_AtA")))

###############################################################################
# With a full-rank state on B the B;ÃA negativity still starts quadratically.
# Its coefficient comes from the A;B formula with the roles of the two sides
# exchanged.

rep = delocalization_report(sf.scenario, t)
print(f"B;AtA second-order coefficient {rep.b_ata_n2:.4f} ({rep.b_ata_path})")
