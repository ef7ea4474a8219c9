"""
Scenario files and the command line
===================================

Scenarios are JSON files with matrices written as ``[re, im]`` pairs. The
``negtrans`` command runs them; here the same entry point is called from
Python.
"""

import json
import tempfile
from pathlib import Path

from negtrans import cli, scenarios

print("shipped:", ", ".join(scenarios.SHIPPED))
data = json.loads(scenarios.shipped_text("qubit_swap"))
print("keys:", sorted(data))

# a modified copy: shorter grid, mixed-state B given by eigenvalues
data["time_grid"] = {"start": 0, "stop": 0.5, "points": 6}
path = Path(tempfile.mkdtemp()) / "swap_short.json"
path.write_text(json.dumps(data, indent=2))

cli.main(["trajectory", "--scenario", str(path)])
cli.main(["perturb", "--scenario", "qutrit_pure_B"])

# unknown fields are rejected with exit code 2
data["colour"] = "blue"
path.write_text(json.dumps(data))
print("exit code:", cli.main(["trajectory", "--scenario", str(path)]))
