"""Driving the batch front end.

The command line tool reads a JSON problem and emits a deterministic JSON
report; verdicts double as exit codes (0 ok, 1 bad input, 2 not Fredholm,
3 cross-check mismatch).  This script assembles a few problems, runs them
through the installed `toephankel` entry point, and summarizes the
reports.

Run:  python demos/06_batch_interface.py
"""

import json
import subprocess
import sys

PROBLEMS = [
    {
        "command": "analyze",
        "shift": {"beta": [2.0, 0.0]},
        "a": "chi^-2",
        "b": "chi^-2",
        "N": 256,
    },
    {
        "command": "analyze",
        "shift": {"beta": [2.0, 0.0]},
        "a": "one",
        "b": "chi^-1",
        "N": 256,
    },
    {
        "command": "signature",
        "shift": {"beta": [2.0, 0.0]},
        "a": ["chi^-1", "chi^-1", "chi^-2"],
    },
    {
        "command": "fredholm",
        "shift": {"beta": [2.0, 0.0]},
        "a": {"base": "one", "jumps": [{"tau": [0.0, 1.0], "beta": [0.5, 0.0]}]},
        "b": 0,
        "p": 2.0,
    },
    {
        "command": "verify",
        "shift": {"beta": [2.0, 0.0]},
        "a": "chi^-2",
        "b": "chi^-2",
        "N": 256,
    },
]


def run(problem):
    proc = subprocess.run(
        [sys.executable, "-m", "toephankel.cli"],
        input=json.dumps(problem).encode(),
        capture_output=True,
    )
    return proc.returncode, json.loads(proc.stdout)


for problem in PROBLEMS:
    code, report = run(problem)
    command = problem["command"]
    print(f"\n$ toephankel  <<<  {json.dumps(problem)}")
    print(f"  exit code {code}")
    if command == "analyze":
        print(f"  kappa = {report['kappa']}, regime = {report['regime']}")
        print(f"  dims = {report['dims']}")
        print(f"  oracle agreement = {report['oracle']['agreement']['all']}")
    elif command == "signature":
        print(f"  sigma = {report['sigma']:+d} via the {report['route']} route")
    elif command == "fredholm":
        rep = report["report"]
        print(f"  fredholm = {rep['fredholm']}"
              f" (min |det| {rep['min_abs_det']:.2e})")
    elif command == "verify":
        print(f"  oracle dims = {report['dims']}")
