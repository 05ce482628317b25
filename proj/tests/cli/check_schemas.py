#!/usr/bin/env python3
"""Runs the CLI on every case in cases.json and checks exits, schemas, determinism and plots."""

import argparse
import json
import pathlib
import subprocess
import sys
import tempfile
import xml.etree.ElementTree as ET

import jsonschema

HERE = pathlib.Path(__file__).resolve().parent


def load_schema(schemas, name):
    return json.loads((schemas / name).read_text())


def validate(schema, doc, what, errors):
    validator = jsonschema.Draft202012Validator(schema)
    problems = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    for p in problems[:3]:
        errors.append(f"{what}: {p.message} at {list(p.path)}")


def run(cli, case, extra, cwd):
    cmd = [cli, case["command"], str(HERE / "inputs" / case["input"]), *case["args"], *extra]
    return subprocess.run(cmd, capture_output=True, text=True, cwd=cwd, timeout=300)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("cli")
    parser.add_argument("schemas")
    args = parser.parse_args()
    args.cli = str(pathlib.Path(args.cli).resolve())
    schemas = pathlib.Path(args.schemas)
    error_schema = load_schema(schemas, "error.schema.json")
    cases = json.loads((HERE / "cases.json").read_text())
    failures = 0

    for case in cases:
        errors = []
        with tempfile.TemporaryDirectory() as tmp:
            plot = pathlib.Path(tmp) / "plot.svg"
            first = run(args.cli, case, ["--plot", str(plot)], tmp)
            if first.returncode != case["exit"]:
                errors.append(f"exit {first.returncode}, expected {case['exit']}: {first.stderr.strip()[:300]}")

            if case["exit"] == 2:
                try:
                    validate(error_schema, json.loads(first.stderr), "error object", errors)
                except json.JSONDecodeError:
                    errors.append("stderr is not a JSON error object")
                if first.stdout:
                    errors.append("stdout should be empty on input error")
            else:
                try:
                    validate(load_schema(schemas, f"{case['command']}.input.schema.json"),
                             json.loads((HERE / "inputs" / case["input"]).read_text()), "input", errors)
                    report = json.loads(first.stdout)
                    validate(load_schema(schemas, f"{case['command']}.output.schema.json"), report, "output", errors)
                except json.JSONDecodeError as e:
                    errors.append(f"output is not JSON: {e}")

                second = run(args.cli, case, [], tmp)
                if second.stdout != first.stdout:
                    errors.append("JSON output differs between identical runs")
                csv_a = run(args.cli, case, ["--format", "csv"], tmp)
                csv_b = run(args.cli, case, ["--format", "csv"], tmp)
                if csv_a.stdout != csv_b.stdout or not csv_a.stdout:
                    errors.append("CSV output is empty or differs between identical runs")

                try:
                    root = ET.parse(plot).getroot()
                    if not root.tag.endswith("svg"):
                        errors.append(f"plot root element is {root.tag}")
                except (ET.ParseError, FileNotFoundError) as e:
                    errors.append(f"plot is not parseable SVG: {e}")

        status = "ok" if not errors else "FAILED"
        print(f"{status:6} {case['name']}")
        for e in errors:
            print(f"       {e}")
        failures += bool(errors)

    print(f"{len(cases) - failures}/{len(cases)} CLI cases passed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
