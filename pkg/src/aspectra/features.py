"""Candidate term construction and the six-feature boolean encoding.

Tokens are pruned (very frequent terms dropped), compound noun pairs merged
into multi-word candidates, and the remainder deduplicated by lemma into one
candidate per unique term.  Each candidate is then encoded as six boolean
features:

    word_length   surface longer than ``min_word_length`` characters
    pos_noun      every constituent token is tagged NOUN
    freq_band     noun whose corpus frequency sits between the two cutoffs
    head_word     final token ends a maximal contiguous noun run somewhere
    orthographic  capitalized or all-uppercase in at least one occurrence
    stopword      every constituent lemma is a stop word

Labels live in {0, 1, -1}: non-aspect, aspect, unknown.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field, replace
from importlib import resources

import numpy as np

from .corpus import Corpus, Pos, Sentence
from .errors import ValidationError

FEATURE_NAMES = (
    "word_length",
    "pos_noun",
    "freq_band",
    "head_word",
    "orthographic",
    "stopword",
)

STOPWORD_LIST_ID = "aspectra-english-stopwords-v1"


def load_bundled_stopwords() -> frozenset[str]:
    text = resources.files("aspectra.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(
        line.strip() for line in text.splitlines()
        if line.strip() and not line.startswith("#")
    )


@dataclass(frozen=True)
class FeatureConfig:
    """Knobs for pruning and feature extraction.

    ``freq_high_cut`` and ``high_freq_prune_threshold`` are fractions of the
    total corpus token count; ``freq_low_cut`` is an absolute count.
    """

    min_word_length: int = 3
    freq_low_cut: int = 2
    freq_high_cut: float = 0.02
    high_freq_prune_threshold: float = 0.02
    stopwords: frozenset[str] = field(default_factory=load_bundled_stopwords)

    def __post_init__(self):
        if self.freq_low_cut < 1:
            raise ValidationError("freq_low_cut must be >= 1")
        if not 0 < self.freq_high_cut <= 1:
            raise ValidationError("freq_high_cut must be in (0, 1]")
        if not 0 < self.high_freq_prune_threshold <= 1:
            raise ValidationError("high_freq_prune_threshold must be in (0, 1]")

    def to_dict(self) -> dict:
        bundled = self.stopwords == load_bundled_stopwords()
        return {
            "min_word_length": self.min_word_length,
            "freq_low_cut": self.freq_low_cut,
            "freq_high_cut": self.freq_high_cut,
            "high_freq_prune_threshold": self.high_freq_prune_threshold,
            "stopwords": STOPWORD_LIST_ID if bundled else sorted(self.stopwords),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FeatureConfig":
        kwargs = dict(data)
        stop = kwargs.pop("stopwords", STOPWORD_LIST_ID)
        if isinstance(stop, str):
            if stop != STOPWORD_LIST_ID:
                raise ValidationError(f"unknown stopword list {stop!r}")
            stopwords = load_bundled_stopwords()
        else:
            stopwords = frozenset(stop)
        return cls(stopwords=stopwords, **kwargs)


@dataclass(frozen=True)
class Occurrence:
    """Token-index span (half-open) of a candidate within one sentence."""

    sentence_id: str
    start: int
    end: int


@dataclass(frozen=True)
class Candidate:
    surface: str
    occurrences: tuple[Occurrence, ...]
    corpus_frequency: int
    is_gold_aspect: bool | None = None

    def __post_init__(self):
        if not self.occurrences:
            raise ValidationError(f"candidate {self.surface!r} has no occurrences")


@dataclass(frozen=True)
class FeatureMatrix:
    """m candidates x 6 boolean features plus a label vector in {0, 1, -1}."""

    candidates: tuple[Candidate, ...]
    matrix: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        m = len(self.candidates)
        if self.matrix.shape != (m, len(FEATURE_NAMES)):
            raise ValidationError(
                f"feature matrix shape {self.matrix.shape} does not match "
                f"{m} candidates x {len(FEATURE_NAMES)} features"
            )
        if self.labels.shape != (m,):
            raise ValidationError("label vector length does not match candidates")
        self.matrix.flags.writeable = False
        self.labels.flags.writeable = False

    @property
    def size(self) -> int:
        return len(self.candidates)

    def feature(self, name: str) -> np.ndarray:
        return self.matrix[:, FEATURE_NAMES.index(name)]


def _gold_token_indices(sentence: Sentence) -> set[int]:
    covered: set[int] = set()
    for span in sentence.gold_aspects:
        if span.token_start != -1:
            covered.update(range(span.token_start, span.token_end))
    return covered


def prune_and_merge(corpus: Corpus, config: FeatureConfig) -> list[Candidate]:
    """Produce the unique candidate list: frequency-pruned, compound-merged,
    deduplicated by lemma.  Sorted lexicographically by surface."""
    total_tokens = sum(len(s.tokens) for s in corpus.sentences)
    if total_tokens == 0:
        return []
    lemma_freq: Counter[str] = Counter(
        t.lemma.lower() for s in corpus.sentences for t in s.tokens
    )
    prune_cut = config.high_freq_prune_threshold * total_tokens
    pruned = {lemma for lemma, n in lemma_freq.items() if n > prune_cut}

    occurrences: dict[str, list[Occurrence]] = {}
    gold_hits: dict[str, bool] = {}
    corpus_has_gold = any(s.has_gold() for s in corpus.sentences)

    for sentence in corpus.sentences:
        covered = _gold_token_indices(sentence)
        consumed: set[int] = set()
        spans: list[tuple[int, int, str]] = []

        # Compound noun pairs merge into one multi-word candidate; the
        # dependent precedes the head in surface order.
        for edge in sentence.dependencies:
            if edge.relation != "compound":
                continue
            head = sentence.tokens[edge.head_index]
            dep = sentence.tokens[edge.dependent_index]
            if head.pos is not Pos.NOUN or dep.pos is not Pos.NOUN:
                continue
            if head.lemma.lower() in pruned or dep.lemma.lower() in pruned:
                continue
            if head.index in consumed or dep.index in consumed:
                continue
            first, second = sorted((head, dep), key=lambda t: t.index)
            surface = f"{first.lemma.lower()} {second.lemma.lower()}"
            spans.append((first.index, second.index + 1, surface))
            consumed.update(range(first.index, second.index + 1))

        for token in sentence.tokens:
            if token.index in consumed or token.lemma.lower() in pruned:
                continue
            spans.append((token.index, token.index + 1, token.lemma.lower()))

        for start, end, surface in spans:
            occ = Occurrence(sentence.id, start, end)
            occurrences.setdefault(surface, []).append(occ)
            is_gold = covered and all(i in covered for i in range(start, end))
            gold_hits[surface] = gold_hits.get(surface, False) or bool(is_gold)

    out = []
    for surface in sorted(occurrences):
        occs = tuple(occurrences[surface])
        out.append(
            Candidate(
                surface=surface,
                occurrences=occs,
                corpus_frequency=len(occs),
                is_gold_aspect=gold_hits[surface] if corpus_has_gold else None,
            )
        )
    return out


def extract_features(
    candidate: Candidate, corpus: Corpus, config: FeatureConfig
) -> np.ndarray:
    """Boolean 6-vector for one candidate (see module docstring for columns)."""
    sentences = {s.id: s for s in corpus.sentences}
    total_tokens = sum(len(s.tokens) for s in corpus.sentences)
    return _extract(candidate, sentences, total_tokens, config)


def _extract(
    candidate: Candidate,
    sentences: dict[str, Sentence],
    total_tokens: int,
    config: FeatureConfig,
) -> np.ndarray:
    parts = candidate.surface.split(" ")
    compact_len = sum(len(p) for p in parts)

    all_noun = True
    head_word = False
    orthographic = False
    for occ in candidate.occurrences:
        sentence = sentences[occ.sentence_id]
        toks = sentence.tokens[occ.start:occ.end]
        if any(t.pos is not Pos.NOUN for t in toks):
            all_noun = False
        last = sentence.tokens[occ.end - 1]
        ends_noun_run = last.pos is Pos.NOUN and (
            occ.end == len(sentence.tokens)
            or sentence.tokens[occ.end].pos is not Pos.NOUN
        )
        heads_compound = any(
            e.relation == "compound" and e.head_index == last.index
            for e in sentence.dependencies
        )
        if ends_noun_run or heads_compound:
            head_word = True
        if toks[0].text[:1].isupper() or all(t.text.isupper() for t in toks):
            orthographic = True

    in_band = (
        config.freq_low_cut
        <= candidate.corpus_frequency
        <= config.freq_high_cut * total_tokens
    )
    return np.array(
        [
            compact_len > config.min_word_length,
            all_noun,
            all_noun and in_band,
            head_word,
            orthographic,
            all(p in config.stopwords for p in parts),
        ],
        dtype=bool,
    )


def build_feature_matrix(corpus: Corpus, config: FeatureConfig) -> FeatureMatrix:
    """Encode all candidates; rows ordered lexicographically by surface,
    labels initialized to -1 (unknown)."""
    candidates = prune_and_merge(corpus, config)
    if not candidates:
        raise ValidationError("empty candidate set")
    sentences = {s.id: s for s in corpus.sentences}
    total_tokens = sum(len(s.tokens) for s in corpus.sentences)
    matrix = np.stack(
        [_extract(c, sentences, total_tokens, config) for c in candidates]
    )
    labels = np.full(len(candidates), -1, dtype=np.int8)
    return FeatureMatrix(tuple(candidates), matrix, labels)


def _gold_classes(matrix: FeatureMatrix) -> np.ndarray:
    gold = [c.is_gold_aspect for c in matrix.candidates]
    if any(g is None for g in gold):
        raise ValidationError("gold aspect class unknown for some candidates")
    return np.array(gold, dtype=bool)


def select_labeled(matrix: FeatureMatrix, fraction: float, seed: int) -> FeatureMatrix:
    """Reveal a stratified random fraction of gold labels per class; all other
    candidates stay -1.  Deterministic given the seed."""
    if not 0 < fraction < 1:
        raise ValidationError("labeled fraction must be in (0, 1)")
    gold = _gold_classes(matrix)
    stop = matrix.feature("stopword")
    if bool(np.any(gold & stop)):
        warnings.warn(
            "gold aspect terms marked as stop words; they will never be "
            "labeled as aspects",
            UserWarning,
            stacklevel=2,
        )
    aspect_pool = np.flatnonzero(gold & ~stop)
    non_aspect_pool = np.flatnonzero(~gold)
    n_aspect = int(fraction * len(aspect_pool))
    n_non_aspect = int(fraction * len(non_aspect_pool))
    if n_aspect == 0 or n_non_aspect == 0:
        raise ValidationError(
            f"fraction {fraction} labels zero candidates in one class "
            f"({len(aspect_pool)} aspect, {len(non_aspect_pool)} non-aspect)"
        )
    rng = np.random.default_rng(seed)
    labels = np.full(matrix.size, -1, dtype=np.int8)
    labels[rng.choice(aspect_pool, n_aspect, replace=False)] = 1
    labels[rng.choice(non_aspect_pool, n_non_aspect, replace=False)] = 0
    return FeatureMatrix(matrix.candidates, matrix.matrix.copy(), labels)


def balance_classes(matrix: FeatureMatrix, ratio: float, seed: int) -> FeatureMatrix:
    """Downsample non-aspect candidates to ``ratio`` times the aspect count.

    Aspect candidates are untouched; row order is preserved.  A no-op when
    the classes are already within the requested ratio.
    """
    if ratio <= 0:
        raise ValidationError("balance ratio must be positive")
    gold = _gold_classes(matrix)
    aspect_idx = np.flatnonzero(gold)
    non_aspect_idx = np.flatnonzero(~gold)
    target = int(ratio * len(aspect_idx))
    if len(non_aspect_idx) <= target:
        return matrix
    rng = np.random.default_rng(seed)
    sampled = rng.choice(non_aspect_idx, target, replace=False)
    keep = np.sort(np.concatenate([aspect_idx, sampled]))
    return FeatureMatrix(
        tuple(matrix.candidates[i] for i in keep),
        matrix.matrix[keep].copy(),
        matrix.labels[keep].copy(),
    )


def feature_matrix_to_csv(matrix: FeatureMatrix) -> str:
    """Debug export: one row per candidate with its six bits and label."""
    lines = ["surface," + ",".join(FEATURE_NAMES) + ",label"]
    for i, cand in enumerate(matrix.candidates):
        bits = ",".join(str(int(b)) for b in matrix.matrix[i])
        lines.append(f"{cand.surface},{bits},{int(matrix.labels[i])}")
    return "\n".join(lines) + "\n"
