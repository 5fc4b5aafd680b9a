"""Opinion pairing and polarity aggregation for detected aspect terms.

For every aspect occurrence, the opinion word is an adjective attached to the
aspect token by an nsubj edge (the copular pattern of review sentences); a
modifier hangs off the opinion word via an amod or advmod edge.  Opinion
words score on a 0-4 scale (0 very negative .. 4 very positive); a modifier
shifts the score one step away from neutral (intensifier) or one step toward
it (diminisher), clamped to the scale, and neutral 2 is a fixed point.
"""

from __future__ import annotations

import csv
import io
import json
from collections import defaultdict
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .corpus import Corpus, Pos, Sentence
from .errors import ValidationError
from .features import Candidate

LEXICON_ID = "aspectra-opinion-lexicon-v1"
NEUTRAL = 2
POLARITY_BUCKETS = ("very_negative", "negative", "neutral", "positive", "very_positive")
_MODIFIER_RELATIONS = {"amod", "advmod"}


@dataclass(frozen=True)
class OpinionLexicon:
    base_scores: dict[str, int]
    intensifiers: frozenset[str]
    diminishers: frozenset[str]

    def __post_init__(self):
        bad = {w: s for w, s in self.base_scores.items() if not 0 <= s <= 4}
        if bad:
            raise ValidationError(f"lexicon scores outside 0-4: {bad}")


def parse_lexicon(text: str) -> OpinionLexicon:
    """Parse the plain-text lexicon: ``lemma score`` lines, then optional
    ``[intensifiers]`` and ``[diminishers]`` sections of one lemma per line."""
    scores: dict[str, int] = {}
    intensifiers: set[str] = set()
    diminishers: set[str] = set()
    section = "scores"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            section = line.strip("[]").lower()
            if section not in ("scores", "intensifiers", "diminishers"):
                raise ValidationError(f"line {lineno}: unknown section {line!r}")
            continue
        if section == "scores":
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise ValidationError(
                    f"line {lineno}: expected 'lemma score', got {line!r}"
                )
            scores[parts[0].lower()] = int(parts[1])
        elif section == "intensifiers":
            intensifiers.add(line.lower())
        else:
            diminishers.add(line.lower())
    return OpinionLexicon(scores, frozenset(intensifiers), frozenset(diminishers))


def load_bundled_lexicon() -> OpinionLexicon:
    text = resources.files("aspectra.data").joinpath("opinion_lexicon.txt").read_text("utf-8")
    return parse_lexicon(text)


def load_lexicon(path: str | Path) -> OpinionLexicon:
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"lexicon file not found: {path}")
    return parse_lexicon(path.read_text("utf-8"))


@dataclass(frozen=True)
class OpinionTuple:
    aspect: str
    opinion_word: str
    modifier: str | None
    sentence_id: str
    score: int | None = None


def extract_opinion_pairs(
    sentence: Sentence, aspects: list[Candidate]
) -> list[OpinionTuple]:
    """Unscored opinion tuples for the aspect occurrences in one sentence.

    Aspects with no nsubj-linked adjective yield no tuple.
    """
    out = []
    for candidate in aspects:
        for occ in candidate.occurrences:
            if occ.sentence_id != sentence.id:
                continue
            span = range(occ.start, occ.end)
            opinions = sorted(
                e.head_index
                for e in sentence.dependencies
                if e.relation == "nsubj"
                and e.dependent_index in span
                and sentence.tokens[e.head_index].pos is Pos.ADJ
            )
            for op_index in opinions:
                modifiers = sorted(
                    e.dependent_index
                    for e in sentence.dependencies
                    if e.relation in _MODIFIER_RELATIONS and e.head_index == op_index
                )
                out.append(
                    OpinionTuple(
                        aspect=candidate.surface,
                        opinion_word=sentence.tokens[op_index].lemma.lower(),
                        modifier=(
                            sentence.tokens[modifiers[0]].lemma.lower()
                            if modifiers else None
                        ),
                        sentence_id=sentence.id,
                    )
                )
    return out


def score_opinion(tup: OpinionTuple, lexicon: OpinionLexicon) -> OpinionTuple:
    """Attach the 0-4 score; unknown opinion words score neutral."""
    base = lexicon.base_scores.get(tup.opinion_word.lower(), NEUTRAL)
    score = base
    if tup.modifier is not None and base != NEUTRAL:
        modifier = tup.modifier.lower()
        away = 1 if base > NEUTRAL else -1
        if modifier in lexicon.intensifiers:
            score = base + away
        elif modifier in lexicon.diminishers:
            score = base - away
    score = min(4, max(0, score))
    return replace(tup, score=score)


@dataclass(frozen=True)
class AspectEntry:
    aspect: str
    frequency: int
    polarity_counts: tuple[int, int, int, int, int]
    mean_score: float | None


@dataclass(frozen=True)
class AspectSummary:
    """Per-aspect aggregation, ranked by corpus frequency (ties by name)."""

    entries: tuple[AspectEntry, ...]


def summarize(
    corpus: Corpus, aspects: list[Candidate], lexicon: OpinionLexicon
) -> AspectSummary:
    """Scan all sentences, score every opinion tuple, aggregate per aspect.

    Aggregation is commutative, so the result does not depend on sentence
    order.  Aspects never paired with an opinion word keep their frequency
    and all-zero polarity counts.
    """
    counts: dict[str, list[int]] = defaultdict(lambda: [0] * 5)
    for sentence in corpus.sentences:
        for tup in extract_opinion_pairs(sentence, aspects):
            scored = score_opinion(tup, lexicon)
            assert scored.score is not None
            counts[scored.aspect][scored.score] += 1

    entries = []
    for candidate in aspects:
        buckets = tuple(counts[candidate.surface])
        n = sum(buckets)
        mean = sum(s * c for s, c in enumerate(buckets)) / n if n else None
        entries.append(
            AspectEntry(
                aspect=candidate.surface,
                frequency=len(candidate.occurrences),
                polarity_counts=buckets,
                mean_score=mean,
            )
        )
    entries.sort(key=lambda e: (-e.frequency, e.aspect))
    return AspectSummary(tuple(entries))


def export_summary(
    summary: AspectSummary,
    top_n: int,
    frequency_csv: str | Path,
    polarity_json: str | Path,
) -> None:
    """Write the frequency CSV (all aspects, ranked) and the polarity JSON
    for the ``top_n`` most frequent aspects."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["aspect", "count"])
    for entry in summary.entries:
        writer.writerow([entry.aspect, entry.frequency])
    Path(frequency_csv).write_text(buf.getvalue(), encoding="utf-8")

    payload = [
        {
            "aspect": e.aspect,
            "counts": list(e.polarity_counts),
            "mean": e.mean_score,
        }
        for e in summary.entries[:top_n]
    ]
    Path(polarity_json).write_text(
        json.dumps(payload, indent=2) + "\n", encoding="utf-8"
    )
