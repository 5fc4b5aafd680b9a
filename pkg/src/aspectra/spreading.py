"""Iterative label spreading over the normalized graph operator.

Starting from the one-hot seed matrix Y0, iterate

    Y <- alpha * S @ Y + (1 - alpha) * Y0

until the Frobenius norm of successive iterates falls below the tolerance.
With 0 < alpha < 1 and spectral radius of S at most 1 this is a contraction,
so the limit Y* exists and solves (I - alpha S) Y* = (1 - alpha) Y0, which
``closed_form_oracle`` evaluates directly by dense solve for verification.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PipelineError, ValidationError
from .features import FeatureMatrix
from .graph import SparseGraph

N_CLASSES = 2


@dataclass(frozen=True)
class SpreadConfig:
    alpha: float = 0.2
    max_iterations: int = 700
    tolerance: float = 1e-4

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValidationError("alpha must be in the open interval (0, 1)")
        if self.max_iterations < 1:
            raise ValidationError("max_iterations must be >= 1")
        if self.tolerance <= 0:
            raise ValidationError("tolerance must be positive")

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "max_iterations": self.max_iterations,
            "tolerance": self.tolerance,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SpreadConfig":
        return cls(**data)


@dataclass(frozen=True)
class LabelDistribution:
    scores: np.ndarray
    iterations_run: int
    converged: bool


def init_label_matrix(matrix: FeatureMatrix) -> np.ndarray:
    """One-hot rows for labeled candidates, zero rows for unlabeled (-1)."""
    labels = matrix.labels
    if not np.any(labels != -1):
        raise ValidationError("no labeled candidates; cannot initialize Y0")
    y0 = np.zeros((matrix.size, N_CLASSES), dtype=np.float64)
    for cls in range(N_CLASSES):
        y0[labels == cls, cls] = 1.0
    return y0


def spread_step(
    graph: SparseGraph, y: np.ndarray, y0: np.ndarray, alpha: float
) -> np.ndarray:
    """One update: alpha * S @ y + (1 - alpha) * y0.  At alpha = 0 this
    returns y0 exactly (all initial information kept)."""
    return alpha * (graph.normalized @ y) + (1.0 - alpha) * y0


def spread(
    graph: SparseGraph, y0: np.ndarray, config: SpreadConfig
) -> LabelDistribution:
    """Iterate from Y0 to convergence or the iteration cap."""
    if y0.shape != (graph.size, N_CLASSES):
        raise ValidationError(
            f"Y0 shape {y0.shape} does not match graph of size {graph.size}"
        )
    if not np.any(y0):
        raise ValidationError("Y0 has no nonzero rows")
    y = y0.copy()
    iterations = 0
    converged = False
    for iterations in range(1, config.max_iterations + 1):
        y_next = spread_step(graph, y, y0, config.alpha)
        if not np.all(np.isfinite(y_next)):
            raise PipelineError(
                "spread", f"non-finite values at iteration {iterations}"
            )
        diff = float(np.linalg.norm(y_next - y))
        y = y_next
        if diff < config.tolerance:
            converged = True
            break
    y.flags.writeable = False
    return LabelDistribution(scores=y, iterations_run=iterations, converged=converged)


def closed_form_oracle(
    graph: SparseGraph, y0: np.ndarray, alpha: float
) -> np.ndarray:
    """Fixed point (1 - alpha) (I - alpha S)^{-1} Y0 by dense solve.

    Test-scale verification path; independent of the iterative route.
    """
    if not 0 <= alpha < 1:
        raise ValidationError("alpha must be in [0, 1) for the closed form")
    s_dense = graph.normalized.toarray()
    system = np.eye(graph.size) - alpha * s_dense
    return (1.0 - alpha) * np.linalg.solve(system, y0)


def assign_labels(dist: LabelDistribution, matrix: FeatureMatrix) -> np.ndarray:
    """Final labels in {0, 1}: argmax of the score row for unlabeled
    candidates (ties and all-zero rows fall to non-aspect); candidates
    labeled at input keep their given label."""
    scores = dist.scores
    if not np.all(np.isfinite(scores)):
        raise PipelineError("assign_labels", "non-finite scores")
    out = np.where(scores[:, 1] > scores[:, 0], 1, 0).astype(np.int8)
    given = matrix.labels != -1
    out[given] = matrix.labels[given]
    return out
