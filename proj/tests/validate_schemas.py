#!/usr/bin/env python3
"""Run the CLI in json mode and validate every document against schemas/<command>.schema.json."""

import copy
import json
import pathlib
import subprocess
import sys

import jsonschema

cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])

RUNS = [
    ("build", ["--p", "1..4"]),
    ("build", ["--word", "R3L2R1"]),
    ("build", ["--word", "RRR"]),
    ("simplify", ["--p", "1..5"]),
    ("solve", ["--p", "1..6"]),
    ("solve", ["--word", "RRRLLR"]),
    ("solve", ["--word", "RRRR"]),
    ("angles", ["--p", "1..3"]),
    ("angles", ["--p", "2", "--lp"]),
    ("angles", ["--word", "RLR"]),
    ("shapes", ["--p", "1..3"]),
    ("shapes", ["--word", "RRR"]),
    ("twobridge", ["--word", "RL"]),
    ("twobridge", ["--word", "RRRR"]),
    ("braid-check", ["--p", "1..6"]),
]

failures = 0
schemas = {}
for path in sorted(schema_dir.glob("*.schema.json")):
    schema = json.loads(path.read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    schemas[path.name.removesuffix(".schema.json")] = schema

for command, args in RUNS:
    proc = subprocess.run([cli, command, *args, "--format", "json"], capture_output=True, text=True)
    label = " ".join([command, *args])
    if proc.returncode not in (0, 2):
        print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
        failures += 1
        continue
    doc = json.loads(proc.stdout)
    validator = jsonschema.Draft202012Validator(schemas[command])
    error = jsonschema.exceptions.best_match(validator.iter_errors(doc))
    if error is not None:
        failures += 1
        print(f"FAIL {label}: {error.message[:200]} at {list(error.absolute_path)}")
        continue
    # a broken document must be rejected
    broken = copy.deepcopy(doc)
    broken["results"][0]["unexpected"] = 1
    if validator.is_valid(broken):
        failures += 1
        print(f"FAIL {label}: schema accepts an unknown key")
        continue
    print(f"ok   {label}")

if set(schemas) != {c for c, _ in RUNS}:
    print("FAIL schema set does not match the commands")
    failures += 1
sys.exit(1 if failures else 0)
