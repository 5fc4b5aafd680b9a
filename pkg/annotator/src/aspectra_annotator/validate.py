"""Schema and consistency checks for annotated JSONL files.

Shape checks run through a JSON Schema; cross-field rules (offset ordering,
dependency index bounds, span coverage) are verified explicitly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import jsonschema

RECORD_SCHEMA = {
    "type": "object",
    "required": ["id", "text", "tokens", "deps"],
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "text": {"type": "string"},
        "tokens": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["text", "lemma", "pos", "start", "end"],
                "properties": {
                    "text": {"type": "string", "minLength": 1},
                    "lemma": {"type": "string"},
                    "pos": {"enum": ["NOUN", "ADJ", "ADV", "VERB", "OTHER"]},
                    "start": {"type": "integer", "minimum": 0},
                    "end": {"type": "integer", "minimum": 1},
                },
            },
        },
        "deps": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["head", "dep", "rel"],
                "properties": {
                    "head": {"type": "integer", "minimum": 0},
                    "dep": {"type": "integer", "minimum": 0},
                    "rel": {"type": "string", "minLength": 1},
                },
            },
        },
        "aspects": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["start", "end"],
                "properties": {
                    "start": {"type": "integer", "minimum": 0},
                    "end": {"type": "integer", "minimum": 1},
                },
            },
        },
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(RECORD_SCHEMA)


@dataclass
class Report:
    records: int = 0
    violations: list[str] = field(default_factory=list)

    def ok(self) -> bool:
        return not self.violations


def _check_record(record: dict, lineno: int, report: Report) -> None:
    before = len(report.violations)
    for error in _VALIDATOR.iter_errors(record):
        path = ".".join(str(p) for p in error.absolute_path) or "record"
        report.violations.append(f"line {lineno}: {path}: {error.message}")
    if len(report.violations) > before:
        return  # cross-field checks assume the shape is right

    text = record["text"]
    previous_end = 0
    for i, tok in enumerate(record["tokens"]):
        if tok["start"] >= tok["end"] or tok["end"] > len(text):
            report.violations.append(
                f"line {lineno}: tokens[{i}] offsets ({tok['start']}, "
                f"{tok['end']}) out of range"
            )
        elif tok["start"] < previous_end:
            report.violations.append(
                f"line {lineno}: tokens[{i}] overlaps the previous token"
            )
        elif text[tok["start"]:tok["end"]] != tok["text"]:
            report.violations.append(
                f"line {lineno}: tokens[{i}] text does not match its offsets"
            )
        previous_end = max(previous_end, tok["end"])

    n = len(record["tokens"])
    for i, dep in enumerate(record["deps"]):
        if dep["head"] >= n or dep["dep"] >= n:
            report.violations.append(
                f"line {lineno}: deps[{i}] index out of range for {n} tokens"
            )
        elif dep["head"] == dep["dep"]:
            report.violations.append(f"line {lineno}: deps[{i}] is reflexive")

    for i, span in enumerate(record.get("aspects", [])):
        if span["start"] >= span["end"] or span["end"] > len(text):
            report.violations.append(
                f"line {lineno}: aspects[{i}] span out of range"
            )


def validate_jsonl(raw: str) -> Report:
    """Check every record line; comment lines are skipped."""
    report = Report()
    seen: set[str] = set()
    for lineno, line in enumerate(raw.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            record = json.loads(stripped)
        except json.JSONDecodeError as exc:
            report.violations.append(f"line {lineno}: invalid JSON: {exc.msg}")
            continue
        report.records += 1
        _check_record(record, lineno, report)
        rid = record.get("id")
        if isinstance(rid, str):
            if rid in seen:
                report.violations.append(
                    f"line {lineno}: duplicate sentence id {rid!r}"
                )
            seen.add(rid)
    return report
