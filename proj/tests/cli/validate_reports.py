"""Validates run reports against the JSON schema."""
import json
import sys

import jsonschema


def main(argv):
    with open(argv[1]) as f:
        schema = json.load(f)
    bad = 0
    for path in argv[2:]:
        with open(path) as f:
            report = json.load(f)
        try:
            jsonschema.validate(report, schema)
        except jsonschema.ValidationError as e:
            print(f"{path}: {e.message}")
            bad += 1
    print(f"{len(argv) - 2 - bad}/{len(argv) - 2} reports valid")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
