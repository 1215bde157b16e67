"""Validate bundled fixtures and live CLI output against the schemas.

Usage: python docs/schemas/check.py path/to/compositum
"""

import glob
import json
import os
import subprocess
import sys

import jsonschema

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.dirname(os.path.dirname(HERE))


def load(name):
    with open(os.path.join(HERE, name)) as f:
        return json.load(f)


def main(binary):
    context = load("context.schema.json")
    output = load("output.schema.json")
    fixtures = sorted(glob.glob(os.path.join(ROOT, "crates/core/fixtures/*.json")))
    for path in fixtures:
        with open(path) as f:
            jsonschema.validate(json.load(f), context)
    runs = []
    for path in fixtures:
        runs += [["close", "--input", path], ["base-field", "--input", path],
                 ["fuse", "--table", "x", "x", "--input", path]]
    runs += [["fuse", "V", "V*", "--input", os.path.join(ROOT, "crates/core/fixtures/real_complex.json")],
             ["fuse", "A", "nope", "--input", fixtures[0]],
             ["oracle-sweep", "--realization", "cyclotomic:8"],
             ["oracle-sweep", "--realization", "s3_x3m2", "--max-degree", "4"],
             ["examples"], ["examples", "--list"]]
    for args in runs:
        out = subprocess.run([binary, *args, "--format", "json"], capture_output=True, text=True)
        jsonschema.validate(json.loads(out.stdout), output)
    print(f"{len(fixtures)} fixtures and {len(runs)} outputs conform")


if __name__ == "__main__":
    main(sys.argv[1])
