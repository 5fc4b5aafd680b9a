"""End-to-end CLI behavior: commands, exit codes, provenance sidecars."""

import json

import pytest

from aspectra.cli import PipelineConfig, main

from conftest import FIXTURES

SMALL_GRID = {
    "k_values": [3, 5],
    "fractions": [0.2],
    "runs": 2,
    "base_seed": 5,
}


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(SMALL_GRID))
    return str(path)


class TestIngest:
    def test_xml_with_annotations(self, tmp_path, capsys):
        out = tmp_path / "corpus.jsonl"
        code = main([
            "ingest", "--input", str(FIXTURES / "restaurant.xml"),
            "--format", "semeval-xml",
            "--annotations", str(FIXTURES / "restaurant_annotations.jsonl"),
            "--domain", "restaurant", "--output", str(out),
        ])
        assert code == 0
        printed = capsys.readouterr().out
        assert "789 sentences" in printed
        assert "aspect words" in printed
        assert out.read_bytes() == (FIXTURES / "restaurant.jsonl").read_bytes()

    def test_jsonl_reingest_is_idempotent(self, tmp_path):
        first = tmp_path / "first.jsonl"
        second = tmp_path / "second.jsonl"
        assert main(["ingest", "--input", str(FIXTURES / "restaurant.jsonl"),
                     "--output", str(first)]) == 0
        assert main(["ingest", "--input", str(first),
                     "--output", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_bad_span_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.xml"
        bad.write_text(
            '<sentences><sentence id="oops"><text>tiny</text>'
            '<aspectTerms><aspectTerm from="0" to="99"/></aspectTerms>'
            "</sentence></sentences>"
        )
        ann = tmp_path / "ann.jsonl"
        ann.write_text("")
        code = main(["ingest", "--input", str(bad), "--format", "semeval-xml",
                     "--annotations", str(ann), "--output", str(tmp_path / "o")])
        assert code == 2
        assert "oops" in capsys.readouterr().err

    def test_xml_requires_annotations(self, tmp_path):
        code = main(["ingest", "--input", str(FIXTURES / "restaurant.xml"),
                     "--format", "semeval-xml", "--output", str(tmp_path / "o")])
        assert code == 2


class TestClassify:
    def test_deterministic_output(self, tmp_path):
        outs = []
        for name in ("a.txt", "b.txt"):
            out = tmp_path / name
            code = main(["classify", "--input", str(FIXTURES / "restaurant.jsonl"),
                         "--seed", "3", "--k", "5", "--output", str(out)])
            assert code == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_diagnostics_embed_config_and_seed(self, tmp_path):
        out = tmp_path / "aspects.txt"
        assert main(["classify", "--input", str(FIXTURES / "restaurant.jsonl"),
                     "--seed", "3", "--output", str(out)]) == 0
        diag = json.loads((tmp_path / "aspects.txt.diagnostics.json").read_text())
        assert diag["seed"] == 3
        assert diag["converged"] is True
        assert diag["config"]["spread"]["alpha"] == 0.2
        assert diag["candidate_count"] > 0

    def test_k_too_large(self, tmp_path, capsys):
        code = main(["classify", "--input", str(FIXTURES / "restaurant.jsonl"),
                     "--seed", "0", "--k", "99999",
                     "--output", str(tmp_path / "a.txt")])
        assert code == 2
        assert "k must be" in capsys.readouterr().err

    def test_matches_scripted_oracle(self, tmp_path):
        from aspectra import evaluation, features
        from aspectra.corpus import parse_annotated_jsonl
        from aspectra.spreading import SpreadConfig

        out = tmp_path / "aspects.txt"
        assert main(["classify", "--input", str(FIXTURES / "restaurant.jsonl"),
                     "--seed", "7", "--k", "4", "--fraction", "0.2",
                     "--output", str(out)]) == 0

        corpus = parse_annotated_jsonl(
            (FIXTURES / "restaurant.jsonl").read_bytes(), domain="restaurant"
        )
        matrix = features.build_feature_matrix(corpus, features.FeatureConfig())
        labeled = features.select_labeled(matrix, 0.2, 7)
        assigned, _ = evaluation.classify_matrix(labeled, 4, SpreadConfig())
        expected = [
            c.surface for c, label in zip(labeled.candidates, assigned)
            if label == 1
        ]
        assert out.read_text().splitlines() == expected


class TestEvaluate:
    def test_writes_csv_and_meta(self, tmp_path, small_config, capsys):
        out = tmp_path / "metrics.csv"
        code = main(["evaluate", "--input", str(FIXTURES / "restaurant.jsonl"),
                     "--config", small_config, "--output", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "dataset,k,labeled_fraction,seed,precision,recall,accuracy"
        assert len(lines) == 1 + 4 + 2  # 2 cells x 2 runs + 2 averages
        meta = json.loads((tmp_path / "metrics.csv.meta.json").read_text())
        assert meta["config"]["runs"] == 2
        assert meta["seed"] == 5
        assert "best k=" in capsys.readouterr().out

    def test_identical_config_and_seed_byte_identical(self, tmp_path, small_config):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            assert main(["evaluate", "--input", str(FIXTURES / "restaurant.jsonl"),
                         "--config", small_config, "--output", str(out)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_matches_golden_file(self, tmp_path, small_config):
        out = tmp_path / "metrics.csv"
        assert main(["evaluate", "--input", str(FIXTURES / "restaurant.jsonl"),
                     "--config", small_config, "--output", str(out)]) == 0
        assert out.read_bytes() == (FIXTURES / "golden_metrics.csv").read_bytes()


class TestSummarize:
    def _classify(self, tmp_path):
        aspects = tmp_path / "aspects.txt"
        assert main(["classify", "--input", str(FIXTURES / "restaurant.jsonl"),
                     "--seed", "3", "--output", str(aspects)]) == 0
        return aspects

    def test_end_to_end(self, tmp_path):
        aspects = self._classify(tmp_path)
        prefix = tmp_path / "summary"
        code = main(["summarize", "--input", str(FIXTURES / "restaurant.jsonl"),
                     "--aspects", str(aspects), "--top-n", "10",
                     "--output", str(prefix)])
        assert code == 0
        freq = (tmp_path / "summary.frequency.csv").read_text().splitlines()
        assert freq[0] == "aspect,count"
        polarity = json.loads((tmp_path / "summary.polarity.json").read_text())
        assert len(polarity) <= 10
        assert all(len(p["counts"]) == 5 for p in polarity)
        counts = [int(line.split(",")[1]) for line in freq[1:]]
        assert counts == sorted(counts, reverse=True)

    def test_missing_lexicon_exits_2(self, tmp_path):
        aspects = self._classify(tmp_path)
        code = main(["summarize", "--input", str(FIXTURES / "restaurant.jsonl"),
                     "--aspects", str(aspects),
                     "--lexicon", str(tmp_path / "missing.txt"),
                     "--output", str(tmp_path / "s")])
        assert code == 2

    def test_matches_golden_polarity(self, tmp_path):
        aspects = self._classify(tmp_path)
        prefix = tmp_path / "summary"
        assert main(["summarize", "--input", str(FIXTURES / "restaurant.jsonl"),
                     "--aspects", str(aspects), "--top-n", "10",
                     "--output", str(prefix)]) == 0
        golden = (FIXTURES / "golden_polarity.json").read_bytes()
        assert (tmp_path / "summary.polarity.json").read_bytes() == golden


class TestConfig:
    def test_round_trip(self):
        config = PipelineConfig()
        assert PipelineConfig.from_dict(config.to_dict()) == config

    def test_missing_file_rejected(self):
        code = main(["classify", "--input", str(FIXTURES / "restaurant.jsonl"),
                     "--config", "/nonexistent.json", "--output", "/tmp/x"])
        assert code == 2

    def test_unknown_key_rejected(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"bogus_knob": 1}')
        code = main(["classify", "--input", str(FIXTURES / "restaurant.jsonl"),
                     "--config", str(bad), "--output", str(tmp_path / "x")])
        assert code == 2
