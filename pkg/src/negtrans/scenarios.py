"""Reading and writing scenario files.

A scenario file is a JSON object. Complex matrices are nested lists of
``[re, im]`` pairs. Unknown keys are rejected. Example::

    {
      "schema_version": 1,
      "dims": {"d_A": 2, "d_B": 2},
      "rho_A": {"eigenvalues": [0.8, 0.2]},
      "rho_B": "pure:0",
      "hamiltonian": {"terms": [{"A": [[[0,0],[1,0]],[[1,0],[0,0]]],
                                 "B": [[[0,0],[0,-1]],[[0,1],[0,0]]]}]},
      "time_grid": {"start": 0, "stop": 3, "points": 50},
      "outputs": ["trajectory"],
      "seed": 0,
      "zero_tol": 1e-10
    }

``rho_A`` and ``rho_B`` accept ``{"eigenvalues": [...]}`` (a diagonal
matrix), ``{"matrix": ...}``, and for B also ``"pure:k"`` for the k-th basis
state.
"""
import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import states
from .dynamics import TotalHamiltonian, make_scenario
from .errors import NegtransError, ValidationError

SCHEMA_VERSION = 1
OUTPUTS = ("trajectory", "perturb", "certify", "optimize")
SHIPPED = ("qutrit_mixed", "qutrit_pure_B", "qutrit_pure_B_free", "qutrit_free_A",
           "qubit_swap", "qubit_product_free")

_TOP = {"schema_version", "dims", "rho_A", "rho_B", "hamiltonian",
        "time_grid", "outputs", "seed", "zero_tol"}
_REQUIRED = {"schema_version", "dims", "rho_A", "rho_B", "hamiltonian"}


@dataclass(frozen=True, eq=False)
class TimeGrid:
    start: float = 0.0
    stop: float = 1.0
    points: int = 101

    def values(self):
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True, eq=False)
class ScenarioFile:
    """A parsed scenario: the physics plus run settings."""

    scenario: object
    rho_a: object
    rho_b: object
    rho_b_text: object
    time_grid: TimeGrid
    outputs: tuple
    seed: int
    zero_tol: float


def _keys(obj, allowed, where, required=()):
    if not isinstance(obj, dict):
        raise ValidationError(f"{where}: expected an object")
    unknown = set(obj) - set(allowed)
    if unknown:
        raise ValidationError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = set(required) - set(obj)
    if missing:
        raise ValidationError(f"{where}: missing field(s) {sorted(missing)}")


def parse_matrix(rows, dim, where):
    try:
        a = np.array(rows, dtype=float)
    except (TypeError, ValueError):
        raise ValidationError(f"{where}: matrix must be nested [re, im] pairs") from None
    if a.shape != (dim, dim, 2):
        raise ValidationError(f"{where}: expected shape ({dim}, {dim}, 2), got {a.shape}")
    return a[..., 0] + 1j * a[..., 1]


def format_matrix(m):
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real) + 0.0, float(z.imag) + 0.0] for z in row] for row in m]


def _number(x, where, kind=float):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ValidationError(f"{where}: expected a number")
    if kind is int and int(x) != x:
        raise ValidationError(f"{where}: expected an integer")
    return kind(x)


def _density(obj, dim, where, allow_pure):
    if isinstance(obj, str):
        if not allow_pure or not obj.startswith("pure:"):
            raise ValidationError(f"{where}: unrecognized state {obj!r}")
        try:
            k = int(obj[5:])
        except ValueError:
            raise ValidationError(f"{where}: bad basis index in {obj!r}") from None
        if not 0 <= k < dim:
            raise ValidationError(f"{where}: basis index {k} out of range")
        v = np.zeros(dim)
        v[k] = 1
        return states.pure_density(v)
    _keys(obj, {"eigenvalues", "matrix"}, where)
    if len(obj) != 1:
        raise ValidationError(f"{where}: give exactly one of 'eigenvalues' or 'matrix'")
    try:
        if "eigenvalues" in obj:
            ev = [_number(x, where) for x in obj["eigenvalues"]]
            if len(ev) != dim:
                raise ValidationError(f"{where}: expected {dim} eigenvalues")
            return states.diagonal_density(ev)
        return states.validate_density(parse_matrix(obj["matrix"], dim, where))
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from None


def parse(data):
    """Validate a decoded scenario object and build the scenario."""
    _keys(data, _TOP, "scenario", _REQUIRED)
    if data["schema_version"] != SCHEMA_VERSION:
        raise ValidationError(f"unsupported schema_version {data['schema_version']!r}")
    dims = data["dims"]
    _keys(dims, {"d_A", "d_B"}, "dims", {"d_A", "d_B"})
    d_A = _number(dims["d_A"], "dims.d_A", int)
    d_B = _number(dims["d_B"], "dims.d_B", int)
    if d_A < 1 or d_B < 1:
        raise ValidationError("dims: dimensions must be positive")
    rho_a = _density(data["rho_A"], d_A, "rho_A", False)
    rho_b = _density(data["rho_B"], d_B, "rho_B", True)

    h = data["hamiltonian"]
    _keys(h, {"terms", "C", "D", "E"}, "hamiltonian", {"terms"})
    if not isinstance(h["terms"], list):
        raise ValidationError("hamiltonian.terms: expected a list")
    terms = []
    for n, term in enumerate(h["terms"]):
        where = f"hamiltonian.terms[{n}]"
        _keys(term, {"A", "B"}, where, {"A", "B"})
        terms.append((parse_matrix(term["A"], d_A, where + ".A"),
                      parse_matrix(term["B"], d_B, where + ".B")))
    free = {}
    for key, dim in (("C", d_A), ("D", d_B), ("E", d_A)):
        if key in h:
            free["free_" + key] = parse_matrix(h[key], dim, "hamiltonian." + key)
    if not terms and "free_C" not in free:
        free.setdefault("free_D", np.zeros((d_B, d_B)))
        free["free_C"] = np.zeros((d_A, d_A))
    try:
        ham = TotalHamiltonian(tuple(terms), **free)
        scenario = make_scenario(rho_a, rho_b, ham)
    except NegtransError as exc:
        raise ValidationError(f"hamiltonian: {exc}") from None

    grid = data.get("time_grid", {})
    _keys(grid, {"start", "stop", "points"}, "time_grid")
    time_grid = TimeGrid(_number(grid.get("start", 0.0), "time_grid.start"),
                         _number(grid.get("stop", 1.0), "time_grid.stop"),
                         _number(grid.get("points", 101), "time_grid.points", int))
    if time_grid.points < 1:
        raise ValidationError("time_grid.points must be at least 1")
    outputs = data.get("outputs", ["trajectory"])
    if not isinstance(outputs, list) or any(o not in OUTPUTS for o in outputs):
        raise ValidationError(f"outputs: expected a list drawn from {list(OUTPUTS)}")
    seed = _number(data.get("seed", 0), "seed", int)
    zero_tol = _number(data.get("zero_tol", states.DEFAULT_ZERO_TOL), "zero_tol")
    if zero_tol <= 0:
        raise ValidationError("zero_tol must be positive")
    return ScenarioFile(scenario, rho_a, rho_b, data["rho_B"], time_grid,
                        tuple(outputs), seed, zero_tol)


def serialize(sf):
    """Inverse of :func:`parse` (states are written as full matrices)."""
    ham = sf.scenario.ham
    h = {"terms": [{"A": format_matrix(a), "B": format_matrix(b)} for a, b in ham.interaction]}
    for key in ("C", "D", "E"):
        m = getattr(ham, "free_" + key)
        if m is not None:
            h[key] = format_matrix(m)
    rho_b = sf.rho_b_text if isinstance(sf.rho_b_text, str) else {"matrix": format_matrix(sf.rho_b.mat)}
    return {
        "schema_version": SCHEMA_VERSION,
        "dims": {"d_A": ham.d_A, "d_B": ham.d_B},
        "rho_A": {"matrix": format_matrix(sf.rho_a.mat)},
        "rho_B": rho_b,
        "hamiltonian": h,
        "time_grid": {"start": sf.time_grid.start, "stop": sf.time_grid.stop,
                      "points": sf.time_grid.points},
        "outputs": list(sf.outputs),
        "seed": sf.seed,
        "zero_tol": sf.zero_tol,
    }


def loads(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not valid JSON: {exc}") from None
    return parse(data)


def shipped_text(name):
    if name not in SHIPPED:
        raise ValidationError(f"no shipped scenario named {name!r}; choose from {list(SHIPPED)}")
    return resources.files("negtrans").joinpath("data").joinpath(name + ".json").read_text()


def load(path_or_name):
    """Load a scenario file, or a shipped scenario by bare name."""
    if path_or_name in SHIPPED:
        return loads(shipped_text(path_or_name))
    try:
        with open(path_or_name, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise ValidationError(f"cannot read scenario: {exc}") from None
