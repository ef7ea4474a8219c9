"""Command-line front end.

Subcommands::

    negtrans trajectory --scenario PATH   CSV of negativities and purities
    negtrans perturb    --scenario PATH   JSON onset coefficients with a
                                          finite-difference cross-check
    negtrans certify    --scenario PATH   JSON separability certificate
    negtrans optimize   --scenario PATH   JSON optimum (+ optional trace CSV)
    negtrans reproduce  FIGURE            CSV for one of the shipped figures

``--scenario`` takes a file path or the name of a shipped scenario. Exit
codes: 0 success, 2 invalid input, 3 the requested quantity does not apply
to the scenario. Errors are printed to stderr as one JSON object.
"""
import argparse
import json
import sys

import numpy as np

from . import perturb, scenarios, states
from .dynamics import TRAJECTORY_COLUMNS, Trajectory, evolve_exact, trajectory
from .errors import RegimeError, ValidationError, NegtransError
from .negativity import negativity
from .optimize import DEFAULT_BUDGET, SpectrumConstrainedFamily, extremize, make_functional
from .separability import product_decomposition, verify_certificate

COLUMN_HELP = """\
trajectory CSV columns:
  t           time (hbar = 1)
  neg_AB      negativity between A and B
  neg_AtB     negativity between the ancilla Ã and B
  neg_AtA     negativity between Ã and A
  neg_At_AB   negativity between Ã and the pair AB
  neg_B_AtA   negativity between B and the pair ÃA
  purity_A    Tr[rho_A^2]
  purity_B    Tr[rho_B^2]
  purity_AB   Tr[rho_AB^2]
"""

FIGURES = {
    "mixed_qutrit": ("qutrit_mixed", "trajectory"),
    "pure_qutrit_AB": ("qutrit_pure_B", "onset"),
    "pure_qutrit_tlAB": ("qutrit_pure_B", "onset"),
    "pure_qutrit_tlAA": ("qutrit_pure_B", "onset"),
    "pure_qutrit_free": ("qutrit_pure_B_free", "onset"),
    "tlAB_hamiltonians": ("qutrit_free_A", "hamiltonians"),
    "delocal_Bfree": ("qubit_product_free", "trajectory"),
    "delocal_SWAP": ("qubit_swap", "trajectory"),
    "mixed_qubit": ("qubit_swap", "trajectory"),
}

_BIPARTITION_NAMES = {"AB": "A;B", "AtB": "At;B", "AtA": "At;A"}


def _grid(args, sf):
    g = sf.time_grid
    start = g.start if args.t_start is None else args.t_start
    stop = g.stop if args.t_stop is None else args.t_stop
    points = g.points if args.points is None else args.points
    if points < 1:
        raise ValidationError("--points must be at least 1")
    return np.linspace(start, stop, points)


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _zero_tol(args, sf):
    return sf.zero_tol if args.zero_tol is None else args.zero_tol


def cmd_trajectory(args):
    sf = scenarios.load(args.scenario)
    _emit(trajectory(sf.scenario, _grid(args, sf)).to_csv(), args.out)


def perturbation_reports(scenario, zero_tol):
    """Onset coefficients for A;B, Ã;B, Ã;A and B;ÃA as JSON-ready dicts."""
    rows = []
    calcs = (("AB", perturb.susceptibility), ("AtB", perturb.transmissibility),
             ("AtA", perturb.vulnerability))
    for key, calc in calcs:
        fd = perturb.fd_second_derivative(perturb.exact_negativity_fn(scenario, key))
        try:
            rep = calc(scenario) if key == "AtA" else calc(scenario, zero_tol)
            n0, n1, n2, regime = rep.n0, rep.n1, rep.n2, rep.formula_path
            gap = abs(fd - 2 * n2) / max(abs(2 * n2), 1e-12)
        except RegimeError:
            n0 = negativity(evolve_exact(scenario, 0.0)[list(_BIPARTITION_NAMES).index(key)],
                            (scenario.d_A, scenario.d_B)).value
            n1, n2, regime, gap = None, None, "finite_time_vanishing", None
        rows.append({"bipartition": _BIPARTITION_NAMES[key], "n0": n0, "n1": n1, "n2": n2,
                     "regime": regime, "fd_second_derivative": fd, "relative_gap": gap})
    value, path = perturb.b_ancilla_coefficient(scenario, zero_tol)
    d = scenario.d_A
    fn = lambda t: negativity(evolve_exact(scenario, t).rho_tri.mat, (d * d, scenario.d_B)).value
    fd = perturb.fd_second_derivative(fn)
    gap = None
    if path == "susceptibility":
        gap = abs(fd - 2 * value) / max(abs(2 * value), 1e-12)
    rows.append({"bipartition": "B;AtA", "n0": fn(0.0), "n1": None, "n2": value,
                 "regime": path, "fd_second_derivative": fd, "relative_gap": gap})
    return rows


def cmd_perturb(args):
    sf = scenarios.load(args.scenario)
    rows = perturbation_reports(sf.scenario, _zero_tol(args, sf))
    _emit(json.dumps(rows, indent=2) + "\n", args.out)


def cmd_certify(args):
    sf = scenarios.load(args.scenario)
    sc = sf.scenario
    points = []
    for t in _grid(args, sf):
        exact = evolve_exact(sc, t).rho_AtB
        decomp = product_decomposition(sc, t)
        points.append({"t": float(t), "residual": verify_certificate(decomp, exact),
                       "neg_AtB": negativity(exact, (sc.d_A, sc.d_B)).value,
                       "weights": [float(w) for w in decomp.weights]})
    report = {"certified": True,
              "max_residual": max(p["residual"] for p in points),
              "points": points}
    _emit(json.dumps(report, indent=2) + "\n", args.out)


def cmd_optimize(args):
    sf = scenarios.load(args.scenario)
    sc = sf.scenario
    rho = sc.rho_a if args.target == "A" else sc.rho_b
    a_op = None
    if args.functional == "G_A" and args.target == "B":
        raise ValidationError("G_A is a functional of rho_A; use --target A")
    family = SpectrumConstrainedFamily(np.sort(rho.eigenvalues)[::-1])
    fn = make_functional(args.functional, sc, args.target, a_op, _zero_tol(args, sf))
    seed = sf.seed if args.seed is None else args.seed
    res = extremize(fn, family, args.direction, args.budget, seed)
    best = family.density(res.best_theta).mat
    report = {"functional": args.functional, "target": args.target,
              "direction": args.direction, "best_value": res.best_value,
              "best_theta": [float(x) for x in res.best_theta],
              "best_state": scenarios.format_matrix(best),
              "evaluations": res.n_evals, "seed": seed}
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    if args.trace:
        tr = Trajectory(np.arange(1, res.n_evals + 1, dtype=float), {"best": res.trace})
        with open(args.trace, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(tr.to_csv().replace("t,best", "evaluation,best", 1))


def _onset_columns(sc, t):
    """Exact Ã;A, A;B, Ã;B negativities next to n0 + n2 t² predictions."""
    base = trajectory(sc, t)
    cols = dict(base.columns)
    for key, col, calc in (("AB", "neg_AB", perturb.susceptibility),
                           ("AtB", "neg_AtB", perturb.transmissibility),
                           ("AtA", "neg_AtA", perturb.vulnerability)):
        rep = calc(sc)
        cols["pert_" + col[4:]] = rep.n0 + rep.n2 * t ** 2
    return Trajectory(t, cols)


def _hamiltonian_columns(sf, t):
    """Ã;B negativity for the product, product+D, product+C and two-term cases."""
    sc = sf.scenario
    qp = scenarios.load("qutrit_pure_B_free").scenario
    (a1, b1), (a2, b2) = qp.ham.interaction
    variants = {
        "neg_AtB_AxB": sc.ham.replace(interaction=((a1, b1),), free_C=None, free_D=None),
        "neg_AtB_AxB_D": sc.ham.replace(interaction=((a1, b1),), free_C=None, free_D=qp.ham.free_D),
        "neg_AtB_AxB_C": sc.ham.replace(interaction=((a1, b1),), free_C=qp.ham.free_C, free_D=None),
        "neg_AtB_two_terms": sc.ham.replace(interaction=((a1, b1), (a2, b2)), free_C=None, free_D=None),
    }
    cols = {name: trajectory(sc.with_hamiltonian(h), t)["neg_AtB"] for name, h in variants.items()}
    return Trajectory(t, cols)


def cmd_reproduce(args):
    if args.figure not in FIGURES:
        raise ValidationError(f"unknown figure {args.figure!r}; choose from {sorted(FIGURES)}")
    name, kind = FIGURES[args.figure]
    sf = scenarios.load(name)
    t = _grid(args, sf)
    if kind == "trajectory":
        tr = trajectory(sf.scenario, t)
    elif kind == "onset":
        tr = _onset_columns(sf.scenario, t)
    else:
        tr = _hamiltonian_columns(sf, t)
    _emit(tr.to_csv(), args.out)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="negtrans", description=__doc__.split("\n\n")[0],
        epilog=COLUMN_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario=True):
        if scenario:
            p.add_argument("--scenario", required=True,
                           help="scenario file, or one of: " + ", ".join(scenarios.SHIPPED))
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--t-start", type=float)
        p.add_argument("--t-stop", type=float)
        p.add_argument("--points", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--zero-tol", type=float,
                       help="eigenvalues of rho_B below this count as zero")
        p.formatter_class = argparse.RawDescriptionHelpFormatter
        return p

    common(sub.add_parser("trajectory", help="negativity trajectory CSV",
                          epilog=COLUMN_HELP)).set_defaults(func=cmd_trajectory)
    common(sub.add_parser("perturb", help="onset coefficients as JSON")).set_defaults(func=cmd_perturb)
    common(sub.add_parser("certify", help="separability certificate")).set_defaults(func=cmd_certify)
    p = common(sub.add_parser("optimize", help="extremize S, T, V or G_A"))
    p.add_argument("--functional", choices=["S", "T", "V", "G_A"], default="V")
    p.add_argument("--target", choices=["A", "B"], default="A",
                   help="which initial state is varied along its unitary orbit")
    p.add_argument("--direction", choices=["min", "max"], default="max")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--trace", help="write the best-value trace as CSV")
    p.set_defaults(func=cmd_optimize)
    p = common(sub.add_parser("reproduce", help="data behind a figure",
                              epilog=COLUMN_HELP), scenario=False)
    p.add_argument("figure", help="one of: " + ", ".join(sorted(FIGURES)))
    p.set_defaults(func=cmd_reproduce)
    return parser


def _fail(kind, exc, code):
    sys.stderr.write(json.dumps({"error": kind, "message": str(exc)}) + "\n")
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "zero_tol", None) is not None and args.zero_tol <= 0:
        return _fail("validation", "--zero-tol must be positive", 2)
    try:
        args.func(args)
    except RegimeError as exc:
        return _fail("regime", exc, 3)
    except (NegtransError, ValueError) as exc:
        return _fail("validation", exc, 2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
