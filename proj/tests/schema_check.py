#!/usr/bin/env python3
"""Validate CLI output and bundled fixtures against the JSON schemas in docs/.

    schema_check.py MODELSEL_BINARY DOCS_DIR FIXTURES_DIR
"""

import json
import pathlib
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource


def load_registry(docs):
    resources = []
    for path in sorted(docs.glob("*.schema.json")):
        schema = json.loads(path.read_text())
        Draft202012Validator.check_schema(schema)
        resources.append((schema["$id"], Resource.from_contents(schema)))
    return Registry().with_resources(resources)


def main():
    cli, docs, fixtures = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    registry = load_registry(docs)
    failures = 0

    def check(schema_id, instance, label):
        nonlocal failures
        schema = registry.contents(schema_id)
        errors = list(Draft202012Validator(schema, registry=registry).iter_errors(instance))
        for e in errors:
            print(f"FAIL {label}: {e.json_path}: {e.message}")
        if errors:
            failures += 1
        else:
            print(f"ok   {label}")

    def run(*args):
        out = subprocess.run([cli, *map(str, args)], check=True, capture_output=True, text=True).stdout
        return json.loads(out)

    for name in ("heart", "diabetes", "cars"):
        profile = fixtures / f"{name}.profile.json"
        check("profile.schema.json", json.loads(profile.read_text()), f"{name} profile fixture")
        flags = [] if name == "heart" else ["--nonlinear"]
        for heuristic in ("gpt", "cheatsheet"):
            rec = run("recommend", "--profile", profile, "--heuristic", heuristic, *flags)
            check("recommendation.schema.json", rec, f"{name} {heuristic} recommendation")
            check("trace.schema.json", rec["trace"], f"{name} {heuristic} trace")
        for report in json.loads((fixtures / "reference_metrics" / f"{name}.json").read_text()):
            check("metric_report.schema.json", report, f"{name} report {report['model']}")

    check("profile.schema.json",
          run("profile", fixtures / "heart_failure_clinical_records_dataset.csv", "--target", "DEATH_EVENT"),
          "profile command output")

    with tempfile.TemporaryDirectory() as tmp:
        rec_path = pathlib.Path(tmp) / "rec.json"
        rec_path.write_text(json.dumps(run("recommend", "--profile", fixtures / "heart.profile.json")))
        started = run("session", "start", "--recommendation", rec_path)
        check("selection_state.schema.json", started["state"], "session start state")
        replay = run("--config", fixtures / "replay_policy.json", "session", "replay", "--recommendation", rec_path,
                     "--reports", fixtures / "reference_metrics" / "heart.json")
        for i, decision in enumerate(replay["decisions"]):
            check("decision.schema.json", decision, f"replay decision {i}")
        check("selection_state.schema.json", replay["state"], "replay final state")

    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
