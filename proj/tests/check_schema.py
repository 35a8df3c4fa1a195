#!/usr/bin/env python3
"""Validates generated scenario documents against the published JSON schema.

Usage: check_schema.py <placekit-cli> <scenario.schema.json>
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    if len(sys.argv) != 3:
        print(__doc__, file=sys.stderr)
        return 2
    cli, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for scale, seed in [("small", 1), ("small", 2), ("medium", 1)]:
            out = Path(tmp) / f"{scale}-{seed}.json"
            subprocess.run(
                [cli, "generate", "--scale", scale, "--seed", str(seed),
                 "--out", str(out)],
                check=True,
            )
            document = json.loads(out.read_text())
            errors = sorted(validator.iter_errors(document), key=str)
            if errors:
                failures += 1
                print(f"{scale} seed {seed}: {len(errors)} schema violations")
                for error in errors[:5]:
                    path = "/".join(str(p) for p in error.absolute_path)
                    print(f"  at /{path}: {error.message[:200]}")
            else:
                print(f"{scale} seed {seed}: OK")

    # A deliberately broken document must be rejected, or the schema is
    # vacuous.
    broken = {"users": []}
    if not list(validator.iter_errors(broken)):
        print("schema accepted an obviously broken document")
        failures += 1

    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
