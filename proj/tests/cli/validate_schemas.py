#!/usr/bin/env python3
"""Runs every subcommand with --format json and validates the output
against docs/schemas/<command>.json."""

import json
import pathlib
import subprocess
import sys

import jsonschema

GOLIATH = "0,1,2,6,6,6"
DAVID = "1,1,4,4,5,6"

CASES = [
    ["compare", "--a", GOLIATH, "--b", DAVID, "--rolls", "1..8"],
    ["sequence", "--a", GOLIATH, "--b", DAVID, "--kmax", "12"],
    ["sequence", "--a", "-1,-1,2", "--b", "0", "--kmax", "12"],
    ["tilt", "--die", "1,-1,3", "--rolls", "3"],
    ["tilt", "--die", "1/2,-1/3", "--rolls", "2", "--center", "1/7"],
    ["span", "--die", "-1,-1,2"],
    ["span", "--die", "1/2,3/4"],
    ["edgeworth", "--a", GOLIATH, "--b", DAVID],
    ["edgeworth", "--die", "-1,0,1"],
    ["edgeworth", "--die", "-1,-1,2", "--no-threshold"],
    ["verify", "--a", GOLIATH, "--b", DAVID, "--max-k", "30", "--expect-default", "W", "--expect-loss-at", "4"],
    ["verify", "--a", GOLIATH, "--b", DAVID, "--rolls", "2..9", "--expect-default", "W"],
    ["map3", "--resolution", "12", "--kmax", "9", "--include-endpoints"],
    ["map4", "--resolution", "6", "--kmax", "5"],
    ["map4", "--domain", "full", "--resolution", "3", "--kmax", "3"],
    ["family", "--x-min", "20", "--x-max", "30", "--x-step", "2", "--kmax", "40", "--fit"],
    ["family", "--x-min", "20", "--x-max", "20", "--kmax", "10"],
    ["cycle", "--die", "2,6,7", "--die", "1,5,9", "--die", "3,4,8"],
]


def main() -> int:
    tool, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.stem: json.loads(p.read_text()) for p in schema_dir.glob("*.json")}
    for schema in schemas.values():
        jsonschema.Draft202012Validator.check_schema(schema)
    failures = 0
    for case in CASES:
        proc = subprocess.run([tool, "--format", "json", *case], capture_output=True, text=True)
        name = " ".join(case)
        if proc.returncode not in (0, 2):
            print(f"FAIL {name}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        try:
            doc = json.loads(proc.stdout)
            jsonschema.validate(doc, schemas[case[0]], cls=jsonschema.Draft202012Validator)
        except (ValueError, KeyError, jsonschema.ValidationError) as e:
            print(f"FAIL {name}: {e}")
            failures += 1
            continue
        print(f"ok   {name}")
    missing = {c[0] for c in CASES} ^ set(schemas)
    if missing:
        print(f"FAIL schemas and cases disagree: {sorted(missing)}")
        failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
