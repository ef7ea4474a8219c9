"""
Choosing the initial state
==========================

The second-order coefficients depend on the initial states. Here the
state of a qubit is rotated at fixed spectrum to find where the amplitude
variance is smallest, and compared with the closed form on the Bloch ball.
"""

import numpy as np

from negtrans import states
from negtrans.optimize import (SpectrumConstrainedFamily, extremize, make_functional,
                               qubit_GA_bloch)

r = 0.6
a1, a2 = 2.0, 0.0
for az in (r, r / 2, 0.0):
    b = states.BlochVector(np.sqrt(r * r - az * az), 0.0, az)
    print(f"a_z = {az:.2f}  G_A = {qubit_GA_bloch(a1, a2, b):.6f}")

family = SpectrumConstrainedFamily([(1 + r) / 2, (1 - r) / 2])
res = extremize(make_functional("G_A", a_op=np.diag([a1, a2])), family, "min", seed=0)
best = states.density_to_bloch(family.density(res.best_theta))
print(f"numerical minimum {res.best_value:.8f} at a_z = {best.az:+.4f} "
      f"after {res.n_evals} evaluations")
