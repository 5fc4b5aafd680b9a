"""Affinity graph construction for semi-supervised label spreading.

The dense RBF affinity A_ij = exp(-d(x_i, x_j)^2 / (2 sigma^2)) over the six
boolean features is sparsified by keeping each node's k nearest neighbors
(ties broken toward the lower index), symmetrized by elementwise maximum, and
degree-normalized to S = D^{-1/2} W D^{-1/2}, whose spectrum lies in [-1, 1].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import PipelineError, ValidationError
from .features import FeatureMatrix

METRICS = ("euclidean", "hamming")


@dataclass(frozen=True)
class AffinityMatrix:
    """Dense symmetric affinity with zero diagonal and entries in [0, 1]."""

    entries: np.ndarray
    sigma: float
    metric: str = "euclidean"

    def __post_init__(self):
        self.entries.flags.writeable = False

    @property
    def size(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class SparseGraph:
    """Symmetrized kNN graph W with degrees D and S = D^{-1/2} W D^{-1/2}."""

    size: int
    k: int
    weights: sp.csr_matrix
    degrees: np.ndarray
    normalized: sp.csr_matrix


def rbf_affinity(
    matrix: FeatureMatrix, sigma: float = 1.0, metric: str = "euclidean"
) -> AffinityMatrix:
    """RBF kernel over the boolean feature rows; the diagonal is zero.

    On boolean data the squared Euclidean distance equals the count of
    differing features; the hamming option squares that count instead.
    """
    if sigma <= 0:
        raise ValidationError("sigma must be positive")
    if metric not in METRICS:
        raise ValidationError(f"metric must be one of {METRICS}")
    m = matrix.size
    if m < 2:
        raise ValidationError("affinity needs at least 2 candidates")
    x = matrix.matrix
    differing = (x[:, None, :] != x[None, :, :]).sum(axis=2)
    d2 = differing if metric == "euclidean" else differing.astype(np.int64) ** 2
    entries = np.exp(-d2 / (2.0 * sigma * sigma))
    np.fill_diagonal(entries, 0.0)
    return AffinityMatrix(entries, sigma, metric)


def knn_sparsify(affinity: AffinityMatrix, k: int) -> sp.csr_matrix:
    """Directed adjacency keeping, per row, the k neighbors at smallest
    distance (largest affinity); affinity ties keep the lower index."""
    m = affinity.size
    if not 1 <= k <= m - 1:
        raise ValidationError(f"k must be in [1, {m - 1}], got {k}")
    a = affinity.entries.copy()
    np.fill_diagonal(a, -np.inf)  # self is never a neighbor
    # Stable sort on descending affinity preserves ascending index among ties.
    order = np.argsort(-a, axis=1, kind="stable")[:, :k]
    rows = np.repeat(np.arange(m), k)
    cols = order.ravel()
    vals = affinity.entries[rows, cols]
    return sp.csr_matrix((vals, (rows, cols)), shape=(m, m))


def symmetrize(directed: sp.spmatrix) -> sp.csr_matrix:
    """Undirected weights via union: W_ij = max(directed_ij, directed_ji)."""
    return directed.maximum(directed.T).tocsr()


def normalize(weights: sp.spmatrix, k: int = 0) -> SparseGraph:
    """Assemble the graph with degrees and normalized operator.

    Raises :class:`PipelineError` naming any zero-degree nodes; the caller
    may raise k or drop those candidates.
    """
    weights = weights.tocsr()
    m = weights.shape[0]
    degrees = np.asarray(weights.sum(axis=1)).ravel()
    dead = np.flatnonzero(degrees <= 0)
    if dead.size:
        raise PipelineError(
            "normalize",
            f"zero-degree nodes at indices {dead.tolist()}; raise k or drop them",
        )
    d_inv_sqrt = sp.diags(1.0 / np.sqrt(degrees))
    s = (d_inv_sqrt @ weights @ d_inv_sqrt).tocsr()
    return SparseGraph(size=m, k=k, weights=weights, degrees=degrees, normalized=s)


def build_graph(
    matrix: FeatureMatrix, sigma: float, k: int, metric: str = "euclidean"
) -> SparseGraph:
    """Affinity -> kNN -> symmetrize -> normalize in one call."""
    affinity = rbf_affinity(matrix, sigma, metric)
    return normalize(symmetrize(knn_sparsify(affinity, k)), k=k)


def to_coordinate_text(matrix: sp.spmatrix) -> str:
    """Debug dump: one ``row col weight`` line per stored entry."""
    coo = matrix.tocoo()
    lines = [
        f"{i} {j} {float(v)!r}" for i, j, v in zip(coo.row, coo.col, coo.data)
    ]
    return "\n".join(lines) + ("\n" if lines else "")
