"""Extremization of the second-order functionals over unitary orbits."""
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from . import perturb, qmat, states
from .dynamics import make_scenario
from .errors import DomainError, NegtransError

DEFAULT_BUDGET = 2000
DEFAULT_RESTARTS = 5


def qubit_GA_bloch(a1, a2, b):
    """Closed-form G_A for ``A = diag(a1, a2)`` and a qubit with Bloch vector ``b``."""
    r = b.r
    if r > 1 + 1e-12:
        raise DomainError(f"Bloch radius {r:.6g} exceeds 1")
    scale = (a1 - a2) ** 2 / 4
    if r == 0:
        return 2 * scale
    s = np.sqrt(max(0.0, 1 - r * r))
    return float(scale * (s + 1 - (1 - s) * b.az ** 2 / r ** 2))


class SpectrumConstrainedFamily:
    """States ``U(θ) diag(spectrum) U(θ)†`` with ``U = exp(-i G(θ))``.

    ``G(θ)`` is Hermitian with the first ``d`` entries of ``θ`` on its
    diagonal and the rest filling the real and imaginary parts of the upper
    triangle, so there are ``d²`` real parameters.
    """

    def __init__(self, fixed_spectrum):
        self.fixed_spectrum = np.asarray(fixed_spectrum, dtype=float)
        self.dim = len(self.fixed_spectrum)
        states.diagonal_density(self.fixed_spectrum)
        self._iu = np.triu_indices(self.dim, 1)

    @property
    def n_params(self):
        return self.dim ** 2

    def generator(self, theta):
        d = self.dim
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (self.n_params,):
            raise ValueError(f"expected {self.n_params} parameters, got {theta.shape}")
        m = len(self._iu[0])
        g = np.diag(theta[:d]).astype(complex)
        g[self._iu] = theta[d:d + m] + 1j * theta[d + m:]
        return g + np.triu(g, 1).conj().T

    def unitary(self, theta):
        return qmat.evolve_unitary(self.generator(theta), 1.0)

    def density(self, theta):
        u = self.unitary(theta)
        rho = states.validate_density((u * self.fixed_spectrum) @ u.conj().T)
        got = np.sort(np.linalg.eigvalsh(rho.mat))
        if np.max(np.abs(got - np.sort(self.fixed_spectrum))) > 1e-10:
            raise DomainError("unitary orbit failed to preserve the spectrum")
        return rho


def make_functional(name, scenario=None, target="A", a_op=None,
                    zero_tol=states.DEFAULT_ZERO_TOL):
    """Map a density matrix to S, T, V or G_A.

    For S, T and V the state replaces rho_A (``target="A"``) or rho_B
    (``target="B"``) in ``scenario``. G_A needs ``a_op``; it defaults to the
    first interaction operator on A.
    """
    if name == "G_A":
        if a_op is None:
            if scenario is None:
                raise ValueError("G_A needs an operator or a scenario")
            a_op = scenario.ham.interaction[0][0]
        return lambda rho: perturb.amplitude_variance_GA(a_op, rho)
    report = {"S": perturb.susceptibility, "T": perturb.transmissibility,
              "V": perturb.vulnerability}.get(name)
    if report is None:
        raise ValueError(f"unknown functional {name!r}")
    if scenario is None:
        raise ValueError(f"{name} needs a scenario")
    kwargs = {} if name == "V" else {"zero_tol": zero_tol}

    def evaluate(rho):
        if target == "A":
            sc = make_scenario(rho, scenario.rho_b, scenario.ham)
        elif target == "B":
            sc = make_scenario(scenario.rho_a, rho, scenario.ham)
        else:
            raise ValueError(f"target must be 'A' or 'B', got {target!r}")
        return report(sc, **kwargs).n2

    return evaluate


class ExtremizeResult(NamedTuple):
    best_theta: np.ndarray
    best_value: float
    trace: np.ndarray
    n_evals: int


class _Budget(Exception):
    pass


def extremize(functional, family, direction="min", budget=DEFAULT_BUDGET, seed=0,
              theta0=None, restarts=DEFAULT_RESTARTS):
    """Nelder-Mead search over ``family`` with seeded random restarts.

    ``functional`` maps a density matrix to a real number. The first restart
    starts from ``theta0`` (zeros by default), the others from random points
    drawn from one generator seeded by ``seed``. ``trace`` holds the best
    value after each evaluation and never gets worse.

    Errors raised by the functional propagate with the offending parameter
    vector attached as ``exc.theta``.
    """
    if direction not in ("min", "max"):
        raise ValueError(f"direction must be 'min' or 'max', got {direction!r}")
    sign = 1.0 if direction == "min" else -1.0
    rng = np.random.default_rng(seed)
    n = family.n_params
    x0 = np.zeros(n) if theta0 is None else np.asarray(theta0, dtype=float)
    starts = [x0] + [rng.uniform(-np.pi, np.pi, n) for _ in range(restarts - 1)]
    per_run = max(1, budget // restarts)
    best = {"x": None, "f": np.inf}
    trace = []

    def objective(x, cap):
        if len(trace) >= cap:
            raise _Budget
        try:
            val = sign * float(functional(family.density(x)))
        except NegtransError as exc:
            exc.theta = np.array(x)
            raise
        if val < best["f"]:
            best["x"], best["f"] = np.array(x), val
        trace.append(best["f"])
        return val

    for k, start in enumerate(starts):
        cap = min(budget, (k + 1) * per_run) if k < restarts - 1 else budget
        if len(trace) >= cap:
            continue
        try:
            minimize(objective, start, args=(cap,), method="Nelder-Mead",
                     options={"maxfev": cap - len(trace), "xatol": 1e-12,
                              "fatol": 1e-14, "adaptive": n > 4})
        except _Budget:
            pass
    return ExtremizeResult(best["x"], sign * best["f"], sign * np.array(trace), len(trace))
