"""Entanglement negativity at the onset of interactions.

An ancilla Ã purifies a system A, which starts interacting with a system B
through a Hamiltonian ``H_tot``. The package computes exact negativity
trajectories for every bipartition, the second-order onset coefficients
(susceptibility, transmissibility, vulnerability), separability
certificates, and optimizations of these coefficients.
"""
from .dynamics import (TotalHamiltonian, TripartiteScenario, Trajectory, build_total,
                       evolve_exact, make_scenario, perturbed_rho_bipartite,
                       perturbed_rho_tri, trajectory)
from .negativity import gurvits_separable, is_ppt_conclusive, negativity, pure_negativity
from .perturb import susceptibility, transmissibility, vulnerability
from .states import purify, split_spectrum, validate_density

__all__ = [
    "TotalHamiltonian", "TripartiteScenario", "Trajectory", "build_total",
    "evolve_exact", "make_scenario", "perturbed_rho_bipartite", "perturbed_rho_tri",
    "trajectory", "gurvits_separable", "is_ppt_conclusive", "negativity",
    "pure_negativity", "susceptibility", "transmissibility", "vulnerability",
    "purify", "split_spectrum", "validate_density",
]
