"""Label spreading iteration, its closed-form oracle, and label assignment."""

import numpy as np
import pytest
import scipy.sparse as sp

from aspectra.errors import PipelineError, ValidationError
from aspectra.graph import SparseGraph, build_graph
from aspectra.spreading import (
    LabelDistribution,
    SpreadConfig,
    assign_labels,
    closed_form_oracle,
    init_label_matrix,
    spread,
    spread_step,
)
from helpers import matrix_from_bits, synthetic_matrix


def two_node_graph(weight=1.0):
    w = sp.csr_matrix(np.array([[0.0, weight], [weight, 0.0]]))
    s = sp.csr_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    return SparseGraph(2, 1, w, np.array([weight, weight]), s)


def chain_graph_3():
    w = sp.csr_matrix(np.array([[0, 1.0, 0], [1.0, 0, 1.0], [0, 1.0, 0]]))
    d = np.array([1.0, 2.0, 1.0])
    dinv = sp.diags(1 / np.sqrt(d))
    return SparseGraph(3, 1, w, d, (dinv @ w @ dinv).tocsr())


def random_graph_and_seeds(rng, m, k=4, n_labeled=None):
    bits = rng.integers(0, 2, size=(m, 6))
    graph = build_graph(matrix_from_bits(bits), sigma=1.0, k=min(k, m - 1))
    n_labeled = n_labeled or max(2, m // 5)
    idx = rng.choice(m, size=n_labeled, replace=False)
    y0 = np.zeros((m, 2))
    y0[idx, rng.integers(0, 2, size=n_labeled)] = 1.0
    return graph, y0


class TestInitLabelMatrix:
    def test_one_hot_encoding(self):
        fm = synthetic_matrix(2, 1)
        labels = np.array([1, 0, -1], dtype=np.int8)
        fm = type(fm)(fm.candidates, fm.matrix.copy(), labels)
        assert init_label_matrix(fm).tolist() == [[0, 1], [1, 0], [0, 0]]

    def test_all_labeled_rows_sum_to_one(self):
        fm = synthetic_matrix(3, 3)
        labels = np.array([1, 1, 1, 0, 0, 0], dtype=np.int8)
        fm = type(fm)(fm.candidates, fm.matrix.copy(), labels)
        y0 = init_label_matrix(fm)
        assert np.all(y0.sum(axis=1) == 1.0)
        assert set(np.unique(y0)) == {0.0, 1.0}

    def test_mixed_fixture_of_five(self):
        fm = synthetic_matrix(3, 2)
        labels = np.array([1, -1, 0, 0, -1], dtype=np.int8)
        fm = type(fm)(fm.candidates, fm.matrix.copy(), labels)
        expected = [[0, 1], [0, 0], [1, 0], [1, 0], [0, 0]]
        assert init_label_matrix(fm).tolist() == expected

    def test_no_labeled_rows_rejected(self):
        fm = synthetic_matrix(2, 2)
        with pytest.raises(ValidationError, match="no labeled"):
            init_label_matrix(fm)


class TestSpread:
    def test_step_with_alpha_zero_returns_y0(self):
        graph = two_node_graph()
        y0 = np.array([[0.0, 1.0], [0.0, 0.0]])
        y = np.array([[0.3, 0.4], [0.5, 0.6]])
        assert np.array_equal(spread_step(graph, y, y0, 0.0), y0)

    def test_two_node_fixed_point_matches_oracle(self):
        graph = two_node_graph()
        y0 = np.array([[0.0, 1.0], [0.0, 0.0]])
        config = SpreadConfig(alpha=0.2, max_iterations=10_000, tolerance=1e-12)
        dist = spread(graph, y0, config)
        oracle = closed_form_oracle(graph, y0, 0.2)
        assert np.max(np.abs(dist.scores - oracle)) < 1e-6
        # (I - 0.2 S)^{-1} scaled by 0.8: [0.8/0.96, 0.16/0.96]
        assert dist.scores[0, 1] == pytest.approx(0.8 / 0.96, abs=1e-6)
        assert dist.scores[1, 1] == pytest.approx(0.16 / 0.96, abs=1e-6)

    def test_paper_defaults_converge(self):
        rng = np.random.default_rng(5)
        graph, y0 = random_graph_and_seeds(rng, 60)
        dist = spread(graph, y0, SpreadConfig(0.2, 700, 1e-4))
        assert dist.converged
        assert dist.iterations_run < 700

    def test_fixed_point_residual_small(self):
        rng = np.random.default_rng(9)
        config = SpreadConfig(0.2, 700, 1e-4)
        for _ in range(5):
            graph, y0 = random_graph_and_seeds(rng, 40)
            dist = spread(graph, y0, config)
            assert dist.converged
            residual = np.linalg.norm(
                dist.scores - spread_step(graph, dist.scores, y0, config.alpha)
            )
            assert residual < 10 * config.tolerance

    def test_deterministic_bitwise(self):
        rng = np.random.default_rng(13)
        graph, y0 = random_graph_and_seeds(rng, 50)
        config = SpreadConfig(0.3, 500, 1e-8)
        a = spread(graph, y0, config)
        b = spread(graph, y0, config)
        assert a.iterations_run == b.iterations_run
        assert np.array_equal(a.scores, b.scores)

    def test_non_finite_detected(self):
        w = sp.csr_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
        s = sp.csr_matrix(np.array([[0.0, np.inf], [np.inf, 0.0]]))
        graph = SparseGraph(2, 1, w, np.array([1.0, 1.0]), s)
        y0 = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(PipelineError, match="non-finite"):
            spread(graph, y0, SpreadConfig(0.5, 10, 1e-4))

    def test_shape_mismatch_rejected(self):
        graph = two_node_graph()
        with pytest.raises(ValidationError, match="shape"):
            spread(graph, np.zeros((3, 2)), SpreadConfig())

    def test_zero_y0_rejected(self):
        graph = two_node_graph()
        with pytest.raises(ValidationError, match="nonzero"):
            spread(graph, np.zeros((2, 2)), SpreadConfig())


class TestClosedFormOracle:
    def test_zero_y0_gives_zero(self):
        graph = two_node_graph()
        assert np.all(closed_form_oracle(graph, np.zeros((2, 2)), 0.5) == 0.0)

    def test_three_node_chain_hand_solved(self):
        # chain 0-1-2, unit weights, node 0 labeled class 1, alpha = 0.5:
        # solving (I - 0.5 S) y = 0.5 y0 by hand gives
        # y = [7/12, sqrt(2)/6, 1/12] in the class-1 column
        graph = chain_graph_3()
        y0 = np.zeros((3, 2))
        y0[0, 1] = 1.0
        result = closed_form_oracle(graph, y0, 0.5)
        expected = np.array([7 / 12, np.sqrt(2) / 6, 1 / 12])
        assert np.allclose(result[:, 1], expected, atol=1e-12)
        assert np.all(result[:, 0] == 0.0)

    def test_agrees_with_spread_on_random_graphs(self):
        rng = np.random.default_rng(21)
        config = SpreadConfig(alpha=0.2, max_iterations=10_000, tolerance=1e-10)
        for _ in range(10):
            m = int(rng.integers(10, 31))
            graph, y0 = random_graph_and_seeds(rng, m)
            dist = spread(graph, y0, config)
            oracle = closed_form_oracle(graph, y0, config.alpha)
            assert np.max(np.abs(dist.scores - oracle)) < 1e-6


class TestAssignLabels:
    def _dist(self, scores):
        return LabelDistribution(np.asarray(scores, dtype=float), 1, True)

    def test_argmax(self):
        fm = synthetic_matrix(1, 0)
        assert assign_labels(self._dist([[0.2, 0.7]]), fm).tolist() == [1]

    def test_tie_and_zero_row_fall_to_non_aspect(self):
        fm = synthetic_matrix(2, 0)
        out = assign_labels(self._dist([[0.0, 0.0], [0.4, 0.4]]), fm)
        assert out.tolist() == [0, 0]

    def test_labeled_rows_keep_input_label(self):
        fm = synthetic_matrix(1, 1)
        labels = np.array([0, 1], dtype=np.int8)
        fm = type(fm)(fm.candidates, fm.matrix.copy(), labels)
        out = assign_labels(self._dist([[0.0, 9.9], [9.9, 0.0]]), fm)
        assert out.tolist() == [0, 1]

    def test_scaling_y0_leaves_labels_unchanged(self):
        rng = np.random.default_rng(33)
        graph, y0 = random_graph_and_seeds(rng, 40)
        config = SpreadConfig(0.2, 10_000, 1e-12)
        fm = synthetic_matrix(20, 20)
        base = assign_labels(spread(graph, y0, config), fm)
        scaled = assign_labels(spread(graph, 7.3 * y0, config), fm)
        assert np.array_equal(base, scaled)


class TestSpreadConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"alpha": 0.0},
            {"alpha": 1.0},
            {"max_iterations": 0},
            {"tolerance": 0.0},
        ],
    )
    def test_invariants(self, kwargs):
        with pytest.raises(ValidationError):
            SpreadConfig(**kwargs)

    def test_defaults_follow_reference_settings(self):
        config = SpreadConfig()
        assert config.alpha == 0.2
        assert config.max_iterations == 700
        assert config.tolerance == 1e-4
