"""Builders for compact in-test corpora."""

import numpy as np

from aspectra.corpus import (
    AspectSpan,
    Corpus,
    DependencyEdge,
    Pos,
    Sentence,
    Token,
)
from aspectra.features import Candidate, FeatureMatrix, Occurrence


def make_sentence(sid, words, deps=(), gold=()):
    """``words`` holds (text, lemma, pos) tuples; ``gold`` holds half-open
    token index spans.  Text is the space-joined surface."""
    tokens = []
    offsets = []
    cursor = 0
    for i, (text, lemma, pos) in enumerate(words):
        start, end = cursor, cursor + len(text)
        tokens.append(Token(text, lemma, Pos[pos], i, start, end))
        offsets.append((start, end))
        cursor = end + 1
    text = " ".join(w[0] for w in words)
    spans = tuple(
        AspectSpan(offsets[s][0], offsets[e - 1][1], token_start=s, token_end=e)
        for s, e in gold
    )
    return Sentence(
        id=sid,
        text=text,
        tokens=tuple(tokens),
        dependencies=tuple(DependencyEdge(*d) for d in deps),
        gold_aspects=spans,
    )


def make_corpus(domain, sentences):
    return Corpus.from_sentences(domain, sentences)


def synthetic_matrix(n_aspect, n_non_aspect, stopword_gold=0):
    """Feature matrix of fabricated candidates for label-selection tests.

    ``stopword_gold`` marks that many gold-aspect candidates as stop words.
    """
    candidates = []
    rows = []
    for i in range(n_aspect):
        candidates.append(
            Candidate(f"asp{i:04d}", (Occurrence(f"s{i}", 0, 1),), 1, True)
        )
        rows.append([1, 1, 1, 1, 0, 1 if i < stopword_gold else 0])
    for i in range(n_non_aspect):
        candidates.append(
            Candidate(f"non{i:04d}", (Occurrence(f"t{i}", 0, 1),), 1, False)
        )
        rows.append([1, 0, 0, 0, 0, 0])
    matrix = np.array(rows, dtype=bool)
    labels = np.full(len(candidates), -1, dtype=np.int8)
    return FeatureMatrix(tuple(candidates), matrix, labels)


def matrix_from_bits(rows):
    """FeatureMatrix with the given boolean rows and fabricated candidates."""
    rows = np.asarray(rows, dtype=bool)
    candidates = tuple(
        Candidate(f"c{i:04d}", (Occurrence(f"s{i}", 0, 1),), 1, None)
        for i in range(rows.shape[0])
    )
    labels = np.full(rows.shape[0], -1, dtype=np.int8)
    return FeatureMatrix(candidates, rows, labels)


def brute_force_knn(entries, k):
    """Independent oracle: full sort per row on (descending affinity,
    ascending index), keep the first k."""
    m = entries.shape[0]
    out = np.zeros((m, m))
    for i in range(m):
        order = sorted(
            (j for j in range(m) if j != i),
            key=lambda j: (-entries[i, j], j),
        )
        for j in order[:k]:
            out[i, j] = entries[i, j]
    return out


def separable_corpus(n_terms=30):
    """Two occurrences each of n aspect nouns and n plain adjectives in
    template sentences; the two classes have disjoint feature rows."""
    sentences = []
    for i in range(n_terms):
        for rep in range(2):
            sentences.append(
                make_sentence(
                    f"s{i:03d}_{rep}",
                    [
                        ("the", "the", "OTHER"),
                        (f"aspect{i:02d}", f"aspect{i:02d}", "NOUN"),
                        ("was", "be", "VERB"),
                        (f"happy{i:02d}", f"happy{i:02d}", "ADJ"),
                        (".", ".", "OTHER"),
                    ],
                    deps=[(1, 0, "det"), (3, 1, "nsubj"), (3, 2, "cop"),
                          (3, 4, "punct")],
                    gold=[(1, 2)],
                )
            )
    return make_corpus("separable", sentences)
