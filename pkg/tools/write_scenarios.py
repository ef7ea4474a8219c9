"""Regenerate the shipped scenario files in src/negtrans/data/."""
import json
import re
from pathlib import Path

import numpy as np

from negtrans.scenarios import format_matrix

OUT = Path(__file__).resolve().parents[1] / "src" / "negtrans" / "data"

A1 = [[2, 1 + 1j, 0.5], [1 - 1j, 3, 4 + 2j], [0.5, 4 - 2j, 1]]
B1 = [[3, 2, 0], [2, 1, 1], [0, 1, 4]]
A2 = [[1, 3, -0.25j], [3, 2, 0], [0.25j, 0, 3]]
B2 = [[0.8, 2 - 1j, 1], [2 + 1j, 1, 2j], [1, -2j, 2]]
C = [[1, 1, 3], [1, 0, 2j], [3, -2j, 0.5]]
D = [[0.5, 2 + 1j, 8 + 3j], [2 - 1j, 1.5, -4], [8 - 3j, -4, 2.2]]
SX = [[0, 1], [1, 0]]
SY = [[0, -1j], [1j, 0]]
SZ = [[1, 0], [0, -1]]
F = [[0, 0.5 + 0.5j], [0.5 - 0.5j, 1]]


def term(a, b):
    return {"A": format_matrix(a), "B": format_matrix(b)}


def scenario(d, rho_a, rho_b, terms, grid, outputs, **free):
    h = {"terms": terms}
    h.update({k: format_matrix(v) for k, v in free.items()})
    return {
        "schema_version": 1,
        "dims": {"d_A": d[0], "d_B": d[1]},
        "rho_A": {"eigenvalues": rho_a},
        "rho_B": rho_b if isinstance(rho_b, str) else {"eigenvalues": rho_b},
        "hamiltonian": h,
        "time_grid": dict(zip(("start", "stop", "points"), grid)),
        "outputs": outputs,
        "seed": 0,
        "zero_tol": 1e-10,
    }


def dump(obj):
    text = json.dumps(obj, indent=2)
    # keep [re, im] pairs and matrix rows on one line each
    text = re.sub(r"\[\s+(-?[\d.e+-]+),\s+(-?[\d.e+-]+)\s+\]", r"[\1, \2]", text)
    text = re.sub(r"\[\s+(\[[^\[\]]*\](?:,\s+\[[^\[\]]*\])*)\s+\]",
                  lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text)
    return text + "\n"


SCENARIOS = {
    "qutrit_mixed": scenario((3, 3), [0.6, 0.3, 0.1], [0.25, 0.4, 0.35],
                             [term(A1, B1), term(A2, B2)], (0.0, 2.0, 401),
                             ["trajectory", "perturb"]),
    "qutrit_pure_B": scenario((3, 3), [0.6, 0.3, 0.1], "pure:0",
                              [term(A1, B1), term(A2, B2)], (0.0, 0.1, 101),
                              ["trajectory", "perturb"]),
    "qutrit_pure_B_free": scenario((3, 3), [0.6, 0.3, 0.1], "pure:0",
                                   [term(A1, B1), term(A2, B2)], (0.0, 0.1, 101),
                                   ["trajectory", "perturb"], C=C, D=D),
    "qutrit_free_A": scenario((3, 3), [0.6, 0.3, 0.1], "pure:0", [term(A1, B1)],
                              (0.0, 3.0, 50), ["trajectory", "certify"], C=C),
    "qubit_swap": scenario((2, 2), [0.8, 0.2], [0.6, 0.4],
                           [term(SX, SX), term(SY, SY), term(SZ, SZ)],
                           (0.0, float(np.pi / 2), 101), ["trajectory", "perturb"]),
    "qubit_product_free": scenario((2, 2), [0.8, 0.2], "pure:0", [term(SX, SY)],
                                   (0.0, 3.0, 50), ["trajectory", "certify"], D=F),
}

if __name__ == "__main__":
    for name, obj in SCENARIOS.items():
        (OUT / f"{name}.json").write_text(dump(obj))
        print("wrote", name)
