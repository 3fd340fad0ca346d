#!/usr/bin/env python3
"""Runs the genset CLI on a set of small inputs and validates every JSON
output against the shipped schemas."""

import json
import subprocess
import sys
import tempfile
from itertools import combinations
from pathlib import Path

import jsonschema
from referencing import Registry, Resource


def load_registry(schema_dir: Path):
    resources = []
    schemas = {}
    for path in sorted(schema_dir.glob("*.schema.json")):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], Resource.from_contents(doc)))
        schemas[path.name.removesuffix(".schema.json")] = doc
    return Registry().with_resources(resources), schemas


def main() -> int:
    genset, schema_dir = Path(sys.argv[1]), Path(sys.argv[2])
    registry, schemas = load_registry(schema_dir)
    failures = 0

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        kneser = tmp / "k62.txt"
        kneser.write_text("n=6\n" + "".join(f"{a},{b}\n" for a, b in combinations(range(1, 7), 2)))
        f42 = tmp / "f42.txt"
        subprocess.run([genset, "gen", "--n", "4", "--k", "2", "-o", f42], check=True,
                       capture_output=True)
        graph = tmp / "h.txt"
        runs = [
            ("gen", ["gen", "--n", "6", "--k", "2", "-o", tmp / "f62.txt"], {0}),
            ("verify", ["verify", "-i", f42, "--k", "2"], {0}),
            ("verify", ["verify", "-i", kneser, "--k", "2"], {1}),
            ("analyze", ["analyze", "-i", kneser, "--k", "3", "--emit-graph", graph], {0}),
            ("analyze", ["analyze", "-i", f42, "--k", "2"], {0}),
            ("search", ["search", "--n", "4", "--k", "2"], {0}),
            ("search", ["search", "--n", "5", "--k", "2", "--enumerate"], {0}),
            ("search", ["search", "--n", "7", "--k", "2", "--node-limit", "100"], {0}),
            ("search", ["search", "--n", "4", "--k", "2", "--base"], {0}),
            ("conjecture", ["search", "--n", "5", "--k", "2", "--conjecture"], {0}),
            ("sample", ["sample", "blowup", "--trials", "2000", "--seed", "7", "--exact"], {0}),
            ("sample", ["sample", "oddcycle", "-i", kneser, "--trials", "2000", "--exact"], {0}),
            ("sample", ["sample", "tail", "--t", "2", "--theta", "1/3", "--trials", "2000"], {0}),
            ("sample", ["sample", "subset", "-i", f42, "--s", "1", "--trials", "500"], {0}),
            ("counterexample", ["counterexample", "--n", "6"], {0}),
            ("counterexample", ["counterexample", "--n", "18"], {0}),
            ("stability", ["stability", "-i", kneser, "--k", "2"], {0, 1}),
            ("stability", ["stability", "-g", graph, "--k", "3"], {0, 1}),
        ]
        for schema_name, args, codes in runs:
            proc = subprocess.run([genset, *map(str, args)], capture_output=True, text=True)
            label = " ".join(map(str, args))
            if proc.returncode not in codes:
                print(f"FAIL exit {proc.returncode}: {label}\n{proc.stderr}")
                failures += 1
                continue
            try:
                doc = json.loads(proc.stdout)
                validator = jsonschema.Draft202012Validator(schemas[schema_name], registry=registry)
                validator.validate(doc)
                print(f"ok   {label}")
            except (json.JSONDecodeError, jsonschema.ValidationError) as exc:
                print(f"FAIL schema: {label}\n{exc}")
                failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
