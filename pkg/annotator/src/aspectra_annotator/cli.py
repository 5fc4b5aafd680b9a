"""Annotator CLI: annotate raw text or SemEval XML into the JSONL schema,
and validate existing JSONL files.

Exit codes: 0 success, 1 I/O failure, 2 validation violations.
"""

from __future__ import annotations

import argparse
import json
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

from .pipeline import annotate_sentence, header_comment, split_sentences
from .validate import validate_jsonl


def annotate_text(raw: str) -> tuple[list[dict], int]:
    """One record per sentence; input is one review per line."""
    records = []
    warnings = 0
    for line_no, line in enumerate(raw.splitlines(), start=1):
        for sent_no, sentence in enumerate(split_sentences(line), start=1):
            record, parsed = annotate_sentence(f"t{line_no:04d}s{sent_no}", sentence)
            if not parsed:
                warnings += 1
            records.append(record)
    return records, warnings


def annotate_semeval_xml(raw: bytes) -> tuple[list[dict], int]:
    """One record per XML sentence element; gold spans pass through."""
    root = ET.fromstring(raw)
    records = []
    warnings = 0
    for elem in root.iter("sentence"):
        sid = elem.get("id") or f"x{len(records) + 1:04d}"
        text_elem = elem.find("text")
        text = text_elem.text if text_elem is not None and text_elem.text else ""
        record, parsed = annotate_sentence(sid, text)
        if not parsed:
            warnings += 1
        aspects = [
            {"start": int(term.get("from")), "end": int(term.get("to"))}
            for term in elem.iter("aspectTerm")
        ]
        if aspects:
            record["aspects"] = aspects
        records.append(record)
    return records, warnings


def _cmd_annotate(args: argparse.Namespace) -> int:
    source = Path(args.input)
    if not source.exists():
        print(f"error: input not found: {source}", file=sys.stderr)
        return 1
    if args.format == "semeval-xml":
        records, warnings = annotate_semeval_xml(source.read_bytes())
    else:
        records, warnings = annotate_text(source.read_text("utf-8"))
    lines = [header_comment()]
    lines += [json.dumps(r, ensure_ascii=False) for r in records]
    Path(args.output).write_text("\n".join(lines) + "\n", encoding="utf-8")
    message = f"annotated {len(records)} sentences -> {args.output}"
    if warnings:
        message += f" ({warnings} sentences with empty parses)"
    print(message)
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    source = Path(args.input)
    if not source.exists():
        print(f"error: input not found: {source}", file=sys.stderr)
        return 1
    report = validate_jsonl(source.read_text("utf-8"))
    print(f"{report.records} records, {len(report.violations)} violations")
    for violation in report.violations:
        print(violation, file=sys.stderr)
    return 0 if report.ok() else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aspectra-annotate",
        description="Rule-based annotator emitting the aspectra JSONL schema",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("annotate", help="annotate raw text or SemEval XML")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("text", "semeval-xml"), default="text")
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_annotate)

    p = sub.add_parser("validate", help="check a JSONL file against the schema")
    p.add_argument("--input", required=True)
    p.set_defaults(func=_cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
