"""Confusion-matrix metrics and the experimental sweep over k, labeled
fraction, and seeds.

One experiment run is the full chain: balance classes, reveal a labeled
fraction, build the kNN graph, spread labels, assign, then score precision,
recall and accuracy over the candidates that stayed unlabeled.  The sweep
executes the Cartesian grid and averages each cell over its run seeds;
per-cell failures are recorded without aborting the grid.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Sequence

import numpy as np

from .corpus import Corpus
from .errors import AspectraError, PipelineError, ValidationError
from .features import (
    FeatureConfig,
    FeatureMatrix,
    balance_classes,
    build_feature_matrix,
    select_labeled,
)
from .graph import build_graph
from .spreading import (
    LabelDistribution,
    SpreadConfig,
    assign_labels,
    init_label_matrix,
    spread,
)

CSV_HEADER = "dataset,k,labeled_fraction,seed,precision,recall,accuracy"


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.tn, self.fn) < 0:
            raise ValidationError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float
    accuracy: float
    undefined: tuple[str, ...] = ()


def confusion(
    predicted: np.ndarray, gold: np.ndarray, evaluated_mask: np.ndarray
) -> ConfusionMatrix:
    """Counts over the masked (test) candidates; aspect class 1 is positive."""
    predicted = np.asarray(predicted)
    gold = np.asarray(gold)
    mask = np.asarray(evaluated_mask, dtype=bool)
    if not (predicted.shape == gold.shape == mask.shape):
        raise ValidationError(
            f"length mismatch: predicted {predicted.shape}, gold {gold.shape}, "
            f"mask {mask.shape}"
        )
    p = predicted[mask] == 1
    g = gold[mask] == 1
    return ConfusionMatrix(
        tp=int(np.sum(p & g)),
        fp=int(np.sum(p & ~g)),
        tn=int(np.sum(~p & ~g)),
        fn=int(np.sum(~p & g)),
    )


def metrics(cm: ConfusionMatrix) -> Metrics:
    """Precision, recall and accuracy; zero denominators yield 0 and are
    flagged in ``undefined``."""
    if cm.total == 0:
        raise ValidationError("empty confusion matrix")
    undefined = []
    if cm.tp + cm.fp > 0:
        precision = cm.tp / (cm.tp + cm.fp)
    else:
        precision = 0.0
        undefined.append("precision")
    if cm.tp + cm.fn > 0:
        recall = cm.tp / (cm.tp + cm.fn)
    else:
        recall = 0.0
        undefined.append("recall")
    accuracy = (cm.tp + cm.tn) / cm.total
    return Metrics(precision, recall, accuracy, tuple(undefined))


@dataclass(frozen=True)
class RunResult:
    """Metrics of one experiment run plus its convergence diagnostics."""

    metrics: Metrics
    iterations_run: int
    converged: bool
    candidate_count: int
    labeled_count: int


@contextmanager
def _stage(name: str):
    try:
        yield
    except AspectraError:
        raise
    except Exception as exc:  # annotate foreign failures with the stage name
        raise PipelineError(name, str(exc)) from exc


def classify_matrix(
    matrix: FeatureMatrix,
    k: int,
    spread_cfg: SpreadConfig,
    sigma: float = 1.0,
    metric: str = "euclidean",
) -> tuple[np.ndarray, LabelDistribution]:
    """Graph construction plus spreading on an already-labeled matrix;
    returns the assigned {0,1} labels and the score distribution."""
    with _stage("graph"):
        graph = build_graph(matrix, sigma=sigma, k=k, metric=metric)
    with _stage("spread"):
        y0 = init_label_matrix(matrix)
        dist = spread(graph, y0, spread_cfg)
    with _stage("assign"):
        assigned = assign_labels(dist, matrix)
    return assigned, dist


def run_experiment(
    corpus: Corpus,
    feature_cfg: FeatureConfig,
    k: int,
    fraction: float,
    spread_cfg: SpreadConfig,
    seed: int,
    sigma: float = 1.0,
    metric: str = "euclidean",
    balance_ratio: float = 1.0,
    base_matrix: FeatureMatrix | None = None,
) -> RunResult:
    """One fully seeded pipeline execution scored on the unlabeled candidates.

    ``base_matrix`` lets callers reuse the corpus featurization across runs;
    it must equal ``build_feature_matrix(corpus, feature_cfg)``.
    """
    with _stage("features"):
        matrix = base_matrix or build_feature_matrix(corpus, feature_cfg)
    with _stage("balance"):
        matrix = balance_classes(matrix, balance_ratio, seed)
    with _stage("select_labeled"):
        labeled = select_labeled(matrix, fraction, seed)
    assigned, dist = classify_matrix(labeled, k, spread_cfg, sigma, metric)
    with _stage("metrics"):
        gold = np.array(
            [c.is_gold_aspect for c in labeled.candidates], dtype=np.int8
        )
        test_mask = labeled.labels == -1
        result = metrics(confusion(assigned, gold, test_mask))
    return RunResult(
        metrics=result,
        iterations_run=dist.iterations_run,
        converged=dist.converged,
        candidate_count=labeled.size,
        labeled_count=int(np.sum(~test_mask)),
    )


@dataclass(frozen=True)
class RunRow:
    dataset: str
    k: int
    labeled_fraction: float
    seed: int
    metrics: Metrics
    iterations_run: int
    converged: bool


@dataclass(frozen=True)
class AveragedRow:
    dataset: str
    k: int
    labeled_fraction: float
    runs: int
    metrics: Metrics


@dataclass(frozen=True)
class CellFailure:
    dataset: str
    k: int
    labeled_fraction: float
    seed: int
    message: str


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[RunRow, ...]
    averages: tuple[AveragedRow, ...]
    failures: tuple[CellFailure, ...]


def _worker_count() -> int:
    cap = os.environ.get("ASPECTRA_THREADS")
    workers = os.cpu_count() or 1
    if cap:
        workers = min(workers, max(1, int(cap)))
    return workers


def sweep(
    corpus: Corpus,
    k_values: Sequence[int],
    fractions: Sequence[float],
    runs: int,
    base_seed: int,
    feature_cfg: FeatureConfig | None = None,
    spread_cfg: SpreadConfig | None = None,
    sigma: float = 1.0,
    metric: str = "euclidean",
    balance_ratio: float = 1.0,
) -> SweepResult:
    """Execute the (k, fraction) grid, ``runs`` seeded runs per cell.

    Every cell uses seeds ``base_seed .. base_seed + runs - 1``; averaged
    rows are the arithmetic mean of the cell's successful runs.
    """
    if not k_values or not fractions:
        raise ValidationError("k_values and fractions must be non-empty")
    if runs < 1:
        raise ValidationError("runs must be >= 1")
    feature_cfg = feature_cfg or FeatureConfig()
    spread_cfg = spread_cfg or SpreadConfig()
    base_matrix = build_feature_matrix(corpus, feature_cfg)
    dataset = corpus.domain_name

    grid = [
        (k, fraction, base_seed + r)
        for k in k_values
        for fraction in fractions
        for r in range(runs)
    ]

    def job(cell: tuple[int, float, int]) -> RunRow | CellFailure:
        k, fraction, seed = cell
        try:
            run = run_experiment(
                corpus, feature_cfg, k, fraction, spread_cfg, seed,
                sigma=sigma, metric=metric, balance_ratio=balance_ratio,
                base_matrix=base_matrix,
            )
        except AspectraError as exc:
            return CellFailure(dataset, k, fraction, seed, str(exc))
        return RunRow(
            dataset, k, fraction, seed, run.metrics,
            run.iterations_run, run.converged,
        )

    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(job, grid))
    else:
        outcomes = [job(cell) for cell in grid]

    rows = tuple(o for o in outcomes if isinstance(o, RunRow))
    failures = tuple(o for o in outcomes if isinstance(o, CellFailure))

    averages = []
    for k in k_values:
        for fraction in fractions:
            members = [
                r for r in rows if r.k == k and r.labeled_fraction == fraction
            ]
            if not members:
                continue
            averages.append(
                AveragedRow(
                    dataset, k, fraction, len(members),
                    Metrics(
                        precision=sum(r.metrics.precision for r in members) / len(members),
                        recall=sum(r.metrics.recall for r in members) / len(members),
                        accuracy=sum(r.metrics.accuracy for r in members) / len(members),
                    ),
                )
            )
    return SweepResult(rows, tuple(averages), failures)


def _csv_lines(result: SweepResult) -> Iterable[str]:
    yield CSV_HEADER
    for r in result.rows:
        m = r.metrics
        yield (
            f"{r.dataset},{r.k},{r.labeled_fraction!r},{r.seed},"
            f"{m.precision!r},{m.recall!r},{m.accuracy!r}"
        )
    for a in result.averages:
        m = a.metrics
        yield (
            f"{a.dataset},{a.k},{a.labeled_fraction!r},avg,"
            f"{m.precision!r},{m.recall!r},{m.accuracy!r}"
        )


def export_metrics_csv(result: SweepResult, destination: str | Path | IO[str]) -> None:
    """Plot-ready CSV: per-run rows followed by averaged rows (seed=avg).

    Floats use shortest round-trip formatting, so identical sweeps export
    byte-identical files.
    """
    if not result.rows and not result.failures:
        raise ValidationError("empty sweep result")
    text = "\n".join(_csv_lines(result)) + "\n"
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text, encoding="utf-8")
