#!/usr/bin/env python3
"""Regenerate tests/golden/<name>.json from tests/golden/cases.json using a built hahnlab."""
import json, pathlib, subprocess, sys

root = pathlib.Path(__file__).resolve().parent.parent
exe = sys.argv[1] if len(sys.argv) > 1 else str(root / "build" / "hahnlab")
golden = root / "tests" / "golden"
for case in json.loads((golden / "cases.json").read_text()):
    r = subprocess.run([exe, "--format", "json", *case["args"]], capture_output=True, text=True)
    if r.returncode != case["exit"]:
        sys.exit(f"{case['name']}: exit {r.returncode}, expected {case['exit']}\n{r.stdout}{r.stderr}")
    (golden / f"{case['name']}.json").write_text(r.stdout)
    print(case["name"], r.returncode)
