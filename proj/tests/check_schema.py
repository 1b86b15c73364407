"""Runs the CLI with --format json and validates every document against schemas/.

Also checks exit codes and that repeated runs are byte-identical.
"""

import json
import subprocess
import sys
from pathlib import Path

import jsonschema

CLI = sys.argv[1]
SCHEMAS = Path(sys.argv[2])

FIXTURES = ["x^3 + y^6", "(x^2 - y^3)^2", "x^2 + y^4", "-x^2 - 2*y^6", "0", "x", "x^2 + y^2"]

CASES = (
    [("inv", [f], 0) for f in FIXTURES]
    + [("branches", [f], 0) for f in FIXTURES]
    + [("psi", [f], 0) for f in FIXTURES]
    + [("crosscheck", [f], 0) for f in FIXTURES]
    + [
        ("compare", ["x^3+y^6", "(x^2-y^3)^2"], 1),
        ("compare", ["x^3+y^6", "x^3+y^6"], 0),
        ("compare", ["x^2+y^4", "-x^2-y^4"], 0),
    ]
)

failures = []


def run(args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


for cmd, polys, want in CASES:
    args = [cmd, *polys, "--format", "json"]
    first = run(args)
    label = " ".join(args)
    if first.returncode != want:
        failures.append(f"{label}: exit {first.returncode}, expected {want}: {first.stderr.strip()}")
        continue
    schema = json.loads((SCHEMAS / f"{cmd}.schema.json").read_text())
    try:
        jsonschema.validate(json.loads(first.stdout), schema)
    except jsonschema.ValidationError as err:
        failures.append(f"{label}: {err.message}")
    if run(args).stdout != first.stdout:
        failures.append(f"{label}: output differs between runs")

psi_rows = json.loads(run(["psi", "x^2+y^4", "--format", "json"]).stdout)["rows"]
if len(psi_rows) != 40:
    failures.append(f"psi x^2+y^4: {len(psi_rows)} rows, expected 40")
for row in psi_rows:
    if abs(row["psi"] / row["t"] ** 4 - 1) > 1e-9:
        failures.append(f"psi x^2+y^4: psi {row['psi']} at t {row['t']} is not t^4")
        break

for args, want in [
    (["inv", "2x"], 2),
    (["inv", "x + z"], 2),
    (["inv", "1 + x"], 2),
    (["inv", "x", "--order", "0"], 2),
    (["inv", "x", "--format", "yaml"], 2),
    (["inv", "x^2 + y^4"], 0),
    (["branches", "x^2+y^2", "--format", "text"], 0),
]:
    got = run(args).returncode
    if got != want:
        failures.append(f"{' '.join(args)}: exit {got}, expected {want}")

for f in failures:
    print("FAIL", f)
print(f"{len(CASES)} json documents checked, {len(failures)} failures")
sys.exit(1 if failures else 0)
