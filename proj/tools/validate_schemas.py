#!/usr/bin/env python3
"""Runs the CLI and validates each JSON output against the shipped schemas."""
import json
import pathlib
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource


def load_registry(schema_dir):
    schemas = {}
    resources = []
    for path in sorted(schema_dir.glob("*.schema.json")):
        schema = json.loads(path.read_text())
        schemas[schema["$id"]] = schema
        resources.append((schema["$id"], Resource.from_contents(schema)))
    return Registry().with_resources(resources), schemas


def run(cli, *args):
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    if proc.returncode not in (0, 2):
        raise SystemExit(f"{' '.join(args)} failed rc={proc.returncode}: {proc.stderr}")
    return json.loads(proc.stdout)


def main():
    cli = sys.argv[1]
    schema_dir = pathlib.Path(sys.argv[2])
    registry, schemas = load_registry(schema_dir)

    def validate(schema_id, doc, label):
        validator = Draft202012Validator(schemas[schema_id], registry=registry)
        errors = list(validator.iter_errors(doc))
        if errors:
            for e in errors:
                print(f"{label}: {e.message}", file=sys.stderr)
            raise SystemExit(f"{label} failed {schema_id}")
        print(f"ok: {label} matches {schema_id}")

    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)

        built = run(cli, "construct", "--kind", "complete", "--dim", "2", "--seed", "9")
        for i, m in enumerate(built["bases"]):
            validate("mublab/matrix-v1", m, f"complete-d2 basis {i}")
        (tmp / "f2.json").write_text(json.dumps(built["bases"][1]))

        t0 = run(cli, "construct", "--kind", "t0")
        (tmp / "f2f3.json").write_text(json.dumps(t0["bases"][1]))
        validate("mublab/matrix-v1", t0["bases"][1], "t0 member")

        enum = run(cli, "mu-vectors", "--matrix", str(tmp / "f2.json"))
        validate("mublab/enumeration-v1", enum, "mu-vectors output")

        witness = run(cli, "classify", "--basis", str(tmp / "f2f3.json"))
        validate("mublab/witness-v1", witness, "classify output")

        pats = run(cli, "patterns", "--matrix", str(tmp / "f2f3.json"))
        for i, cert in enumerate(pats["certificates"]):
            validate("mublab/certificate-v1", cert, f"certificate {i}")

        c3 = run(cli, "construct", "--kind", "complete", "--dim", "3")
        for i in (1, 2, 3):
            (tmp / f"c3_{i}.json").write_text(json.dumps(c3["bases"][i]))
        trio = run(cli, "trio", *sum((["--matrix", str(tmp / f"c3_{i}.json")]
                                      for i in (1, 2, 3)), []))
        validate("mublab/trio-v1", trio, "trio output")

        grid = {"alpha": [0.0, 0.6], "beta": [1.0], "x": [0.5], "y": [0.9], "seed": 3}
        (tmp / "grid.json").write_text(json.dumps(grid))
        reports = tmp / "reports.jsonl"
        run(cli, "search", "--grid", str(tmp / "grid.json"), "--reports", str(reports))
        lines = reports.read_text().strip().splitlines()
        assert len(lines) == 2, f"expected 2 census records, got {len(lines)}"
        for i, line in enumerate(lines):
            validate("mublab/report-v1", json.loads(line), f"census record {i}")

        minimized = run(cli, "search", "--seed", "5", "--max-iters", "1")
        validate("mublab/report-v1", minimized, "minimize output")

    print("all schema checks passed")


if __name__ == "__main__":
    main()
