"""Command-line pipeline: ingest -> classify -> evaluate -> summarize.

Every output sits beside a provenance JSON echoing the resolved config and
seed, so a run can be reproduced from its own artifacts.  Exit codes:
0 success, 1 runtime stage failure, 2 input or validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import evaluation, features, summary as summary_mod
from .corpus import (
    Corpus,
    attach_annotations,
    parse_annotated_jsonl,
    parse_semeval_xml,
    serialize_jsonl,
)
from .errors import PipelineError, ValidationError
from .features import FeatureConfig
from .spreading import SpreadConfig


@dataclass(frozen=True)
class PipelineConfig:
    features: FeatureConfig = field(default_factory=FeatureConfig)
    spread: SpreadConfig = field(default_factory=SpreadConfig)
    sigma: float = 1.0
    metric: str = "euclidean"
    k: int = 5
    fraction: float = 0.2
    balance_ratio: float = 1.0
    k_values: tuple[int, ...] = tuple(range(1, 21))
    fractions: tuple[float, ...] = (0.10, 0.15, 0.20)
    runs: int = 10
    base_seed: int = 0
    top_n: int = 10

    def to_dict(self) -> dict:
        return {
            "features": self.features.to_dict(),
            "spread": self.spread.to_dict(),
            "sigma": self.sigma,
            "metric": self.metric,
            "k": self.k,
            "fraction": self.fraction,
            "balance_ratio": self.balance_ratio,
            "k_values": list(self.k_values),
            "fractions": list(self.fractions),
            "runs": self.runs,
            "base_seed": self.base_seed,
            "top_n": self.top_n,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineConfig":
        kwargs = dict(data)
        try:
            if "features" in kwargs:
                kwargs["features"] = FeatureConfig.from_dict(kwargs["features"])
            if "spread" in kwargs:
                kwargs["spread"] = SpreadConfig.from_dict(kwargs["spread"])
            if "k_values" in kwargs:
                kwargs["k_values"] = tuple(kwargs["k_values"])
            if "fractions" in kwargs:
                kwargs["fractions"] = tuple(kwargs["fractions"])
            return cls(**kwargs)
        except TypeError as exc:
            raise ValidationError(f"invalid config: {exc}") from exc

    @classmethod
    def load(cls, path: str | Path | None) -> "PipelineConfig":
        if path is None:
            return cls()
        p = Path(path)
        if not p.exists():
            raise ValidationError(f"config file not found: {p}")
        try:
            return cls.from_dict(json.loads(p.read_text("utf-8")))
        except json.JSONDecodeError as exc:
            raise ValidationError(f"config {p}: invalid JSON: {exc.msg}") from exc


def _read_corpus(path: str, domain: str | None = None) -> Corpus:
    p = Path(path)
    if not p.exists():
        raise ValidationError(f"corpus file not found: {p}")
    return parse_annotated_jsonl(p.read_bytes(), domain=domain or p.stem)


def _write_provenance(output: Path, command: str, config: PipelineConfig,
                      seed: int | None, inputs: dict) -> None:
    meta = {
        "command": command,
        "inputs": inputs,
        "seed": seed,
        "config": config.to_dict(),
    }
    sidecar = output.with_name(output.name + ".meta.json")
    sidecar.write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")


def _cmd_ingest(args: argparse.Namespace) -> int:
    domain = args.domain or Path(args.input).stem
    raw = Path(args.input)
    if not raw.exists():
        raise ValidationError(f"input file not found: {raw}")
    if args.format == "semeval-xml":
        if not args.annotations:
            raise ValidationError("--annotations is required for semeval-xml input")
        corpus = parse_semeval_xml(raw.read_bytes(), domain=domain)
        annotations = parse_annotated_jsonl(
            Path(args.annotations).read_bytes(), domain=domain
        )
        corpus = attach_annotations(corpus, annotations)
    else:
        corpus = parse_annotated_jsonl(raw.read_bytes(), domain=domain)
    output = Path(args.output)
    output.write_text(serialize_jsonl(corpus), encoding="utf-8")
    stats = corpus.stats
    print(
        f"{corpus.domain_name}: {stats.sentence_count} sentences, "
        f"{stats.aspect_word_count} aspect words, "
        f"{stats.non_aspect_word_count} non-aspect words"
    )
    _write_provenance(output, "ingest", PipelineConfig.load(None), None,
                      {"input": str(raw), "format": args.format,
                       "annotations": args.annotations})
    return 0


def _apply_overrides(config: PipelineConfig, args: argparse.Namespace) -> PipelineConfig:
    updates: dict = {}
    for attr in ("k", "fraction", "runs", "top_n"):
        value = getattr(args, attr, None)
        if value is not None:
            updates[attr] = value
    if not updates:
        return config
    data = config.to_dict()
    data.update(updates)
    return PipelineConfig.from_dict(data)


def _cmd_classify(args: argparse.Namespace) -> int:
    config = _apply_overrides(PipelineConfig.load(args.config), args)
    corpus = _read_corpus(args.input)
    seed = args.seed if args.seed is not None else config.base_seed

    matrix = features.build_feature_matrix(corpus, config.features)
    labeled = features.select_labeled(matrix, config.fraction, seed)
    assigned, dist = evaluation.classify_matrix(
        labeled, config.k, config.spread, config.sigma, config.metric
    )
    detected = [
        c.surface for c, label in zip(labeled.candidates, assigned) if label == 1
    ]

    output = Path(args.output)
    output.write_text("\n".join(detected) + ("\n" if detected else ""), "utf-8")
    diagnostics = {
        "iterations_run": dist.iterations_run,
        "converged": dist.converged,
        "candidate_count": labeled.size,
        "labeled_count": int(np.sum(labeled.labels != -1)),
        "detected_aspect_count": len(detected),
        "seed": seed,
        "config": config.to_dict(),
    }
    diag_path = output.with_name(output.name + ".diagnostics.json")
    diag_path.write_text(json.dumps(diagnostics, indent=2) + "\n", "utf-8")
    print(
        f"classified {labeled.size} candidates "
        f"({len(detected)} aspects, {dist.iterations_run} iterations)"
    )
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    config = _apply_overrides(PipelineConfig.load(args.config), args)
    if args.seed is not None:
        data = config.to_dict()
        data["base_seed"] = args.seed
        config = PipelineConfig.from_dict(data)
    corpus = _read_corpus(args.input)

    result = evaluation.sweep(
        corpus,
        k_values=config.k_values,
        fractions=config.fractions,
        runs=config.runs,
        base_seed=config.base_seed,
        feature_cfg=config.features,
        spread_cfg=config.spread,
        sigma=config.sigma,
        metric=config.metric,
        balance_ratio=config.balance_ratio,
    )
    if not result.rows:
        raise PipelineError("sweep", "all grid cells failed")
    output = Path(args.output)
    evaluation.export_metrics_csv(result, output)
    _write_provenance(output, "evaluate", config, config.base_seed,
                      {"input": args.input})
    for fraction in config.fractions:
        best = max(
            (a for a in result.averages if a.labeled_fraction == fraction),
            key=lambda a: a.metrics.accuracy,
            default=None,
        )
        if best is not None:
            print(
                f"fraction {fraction:.2f}: best k={best.k} "
                f"accuracy={best.metrics.accuracy:.4f}"
            )
    if result.failures:
        print(f"{len(result.failures)} grid cells failed", file=sys.stderr)
    return 0


def _cmd_summarize(args: argparse.Namespace) -> int:
    config = _apply_overrides(PipelineConfig.load(args.config), args)
    corpus = _read_corpus(args.input)
    aspects_path = Path(args.aspects)
    if not aspects_path.exists():
        raise ValidationError(f"aspects file not found: {aspects_path}")
    wanted = {
        line.strip() for line in aspects_path.read_text("utf-8").splitlines()
        if line.strip()
    }
    lexicon = (
        summary_mod.load_lexicon(args.lexicon)
        if args.lexicon else summary_mod.load_bundled_lexicon()
    )
    candidates = features.prune_and_merge(corpus, config.features)
    aspects = [c for c in candidates if c.surface in wanted]
    missing = wanted - {c.surface for c in aspects}
    if missing:
        print(
            f"warning: {len(missing)} aspect terms not found among candidates",
            file=sys.stderr,
        )
    result = summary_mod.summarize(corpus, aspects, lexicon)
    prefix = Path(args.output)
    freq_path = prefix.with_name(prefix.name + ".frequency.csv")
    polarity_path = prefix.with_name(prefix.name + ".polarity.json")
    summary_mod.export_summary(result, config.top_n, freq_path, polarity_path)
    _write_provenance(freq_path, "summarize", config, None,
                      {"input": args.input, "aspects": args.aspects,
                       "lexicon": args.lexicon})
    print(f"summarized {len(result.entries)} aspects -> {freq_path}, {polarity_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aspectra",
        description="Aspect term extraction and opinion summarization pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate and canonicalize a corpus")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("semeval-xml", "jsonl"), default="jsonl")
    p.add_argument("--annotations", help="annotated JSONL for semeval-xml input")
    p.add_argument("--domain", help="dataset name (defaults to file stem)")
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("classify", help="detect aspect terms in a corpus")
    p.add_argument("--input", required=True)
    p.add_argument("--config")
    p.add_argument("--seed", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--fraction", type=float)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("evaluate", help="run the (k, fraction, seed) sweep")
    p.add_argument("--input", required=True)
    p.add_argument("--config")
    p.add_argument("--seed", type=int, help="override the sweep base seed")
    p.add_argument("--runs", type=int)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("summarize", help="aggregate opinion polarity per aspect")
    p.add_argument("--input", required=True)
    p.add_argument("--aspects", required=True, help="aspect list from classify")
    p.add_argument("--config")
    p.add_argument("--lexicon", help="opinion lexicon file (default: bundled)")
    p.add_argument("--top-n", dest="top_n", type=int)
    p.add_argument("--output", required=True, help="output path prefix")
    p.set_defaults(func=_cmd_summarize)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
