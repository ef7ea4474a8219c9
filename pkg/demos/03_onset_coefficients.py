"""
Second-order onset of entanglement
==================================

With a pure state on B, negativity grows quadratically from the start. The
three coefficients are the susceptibility S (A;B), the transmissibility T
(ancilla;B) and the vulnerability V (ancilla;A). Each is compared against a
finite-difference second derivative of the exact trajectory.
"""

from negtrans import perturb, scenarios

sc = scenarios.load("qutrit_pure_B").scenario

for key, calc in (("AB", perturb.susceptibility), ("AtB", perturb.transmissibility),
                  ("AtA", perturb.vulnerability)):
    rep = calc(sc)
    fd = perturb.fd_second_derivative(perturb.exact_negativity_fn(sc, key))
    print(f"{rep.bipartition:5s} n0 = {rep.n0:.6f}  n1 = {rep.n1:.1e}  "
          f"2*n2 = {2 * rep.n2:10.4f}  finite difference = {fd:10.4f}")

###############################################################################
# Free Hamiltonians on A or B leave all three coefficients unchanged.

free = scenarios.load("qutrit_pure_B_free").scenario
print("S with and without free terms:",
      perturb.susceptibility(sc).n2, perturb.susceptibility(free).n2)

###############################################################################
# Useful bounds on the amplitude variance.

a_op = sc.ham.interaction[0][0]
print("G_A =", perturb.amplitude_variance_GA(a_op, sc.rho_a),
      ">= Var =", perturb.variance(a_op, sc.rho_a),
      ">= f2 =", perturb.fragility_2(a_op, sc.rho_a))
