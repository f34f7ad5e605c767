"""Runs every JSON-emitting subcommand and validates the output against the
shipped schemas. Usage: check_schemas.py <vkd binary> <source dir>"""

import json
import os
import subprocess
import sys

import jsonschema

vkd, root = sys.argv[1], sys.argv[2]
data = os.path.join(root, "data")
schemas = os.path.join(root, "schemas")

aBab = os.path.join(data, "aBab.txt")
genus2 = os.path.join(data, "genus2.txt")
fixture = os.path.join(data, "aBab_single_face.json")

runs = [
    ("bounds", ["--d", "1/4", "--eps", "1/20", "--L", "100", "--n", "2",
                "--g-len", "4", "--h-sum", "3"]),
    ("check-smallcancel", ["--presentation", genus2]),
    ("check-smallcancel", ["--presentation", aBab, "--lambda", "1/2"]),
    ("dehn", ["--presentation", genus2, "--word", "abABcdCD"]),
    ("dehn", ["--presentation", aBab, "--word", "ab"]),
    ("filling", ["--presentation", aBab, "--word", "Baba", "--max-area", "1",
                 "--max-conj", "1"]),
    ("filling", ["--presentation", aBab, "--word", "ab"]),
    ("verify-diagram", ["--diagram", fixture, "--presentation", aBab,
                        "--word", "aBab", "--g", "a", "--hs", ",b"]),
    ("verify-diagram", ["--diagram", fixture, "--presentation", aBab,
                        "--word", "abAB"]),
    ("search", ["--presentation", aBab, "--max-width", "2", "--max-g", "1",
                "--max-h", "1", "--method", "filling:1,2", "--beta", "1/2",
                "--timing"]),
    ("search", ["--presentation", genus2, "--max-width", "2", "--max-g", "2",
                "--max-h", "2"]),
    ("enumerate", ["--m", "2", "--n", "3", "--cyclic"]),
]

failed = 0
for command, args in runs:
    with open(os.path.join(schemas, command + ".schema.json")) as f:
        schema = json.load(f)
    out = subprocess.run([vkd, command] + args, capture_output=True, text=True)
    try:
        if out.returncode != 0:
            raise RuntimeError("exit %d: %s" % (out.returncode, out.stderr))
        jsonschema.validate(json.loads(out.stdout), schema)
        print("ok  ", command, " ".join(args))
    except Exception as e:  # noqa: BLE001
        failed += 1
        print("FAIL", command, " ".join(args), "\n    ", e)

with open(os.path.join(schemas, "diagram.schema.json")) as f:
    diagram_schema = json.load(f)
with open(fixture) as f:
    try:
        jsonschema.validate(json.load(f), diagram_schema)
        print("ok   diagram fixture")
    except jsonschema.ValidationError as e:
        failed += 1
        print("FAIL diagram fixture\n    ", e)

sys.exit(1 if failed else 0)
