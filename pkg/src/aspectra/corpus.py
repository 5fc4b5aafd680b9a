"""Domain model for annotated review corpora and its two ingestion formats.

The core never runs an NLP toolkit itself: it consumes sentences that were
tokenized, POS-tagged and dependency-parsed elsewhere, delivered as one JSON
object per line (see ``parse_annotated_jsonl``).  SemEval-style XML carries
only sentence text and gold aspect spans; it is merged with an annotation
file via ``attach_annotations``.
"""

from __future__ import annotations

import enum
import json
import re
import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .errors import ValidationError

_WORD_RE = re.compile(r"\w+(?:'\w+)?")


class Pos(str, enum.Enum):
    """Coarse part-of-speech tag; only these five values are consumed downstream."""

    NOUN = "NOUN"
    ADJ = "ADJ"
    ADV = "ADV"
    VERB = "VERB"
    OTHER = "OTHER"


@dataclass(frozen=True)
class Token:
    """One token of a sentence; ``start``/``end`` are character offsets into
    the sentence text (half-open), -1 when the annotator supplied none."""

    text: str
    lemma: str
    pos: Pos
    index: int
    start: int = -1
    end: int = -1

    def __post_init__(self):
        if not self.text:
            raise ValidationError("token text must be non-empty")
        if self.index < 0:
            raise ValidationError("token index must be non-negative")


@dataclass(frozen=True)
class DependencyEdge:
    head_index: int
    dependent_index: int
    relation: str

    def __post_init__(self):
        if self.head_index == self.dependent_index:
            raise ValidationError(
                f"dependency edge may not be reflexive (index {self.head_index})"
            )
        if not self.relation:
            raise ValidationError("dependency relation must be non-empty")


@dataclass(frozen=True)
class AspectSpan:
    """Gold aspect span.  ``start``/``end`` are character offsets; the token
    index range (half-open) is -1 until aligned against tokens."""

    start: int
    end: int
    token_start: int = -1
    token_end: int = -1

    def __post_init__(self):
        if self.start < 0 or self.end <= self.start:
            raise ValidationError(f"invalid span offsets ({self.start}, {self.end})")


@dataclass(frozen=True)
class Sentence:
    id: str
    text: str
    tokens: tuple[Token, ...] = ()
    dependencies: tuple[DependencyEdge, ...] = ()
    gold_aspects: tuple[AspectSpan, ...] = ()

    def __post_init__(self):
        if not self.id:
            raise ValidationError("sentence id must be non-empty")
        for i, tok in enumerate(self.tokens):
            if tok.index != i:
                raise ValidationError(
                    f"sentence {self.id!r}: token index {tok.index} at position {i}"
                )
            if tok.start != -1 and not (0 <= tok.start < tok.end <= len(self.text)):
                raise ValidationError(
                    f"sentence {self.id!r}: token offsets ({tok.start}, {tok.end}) "
                    f"exceed text of length {len(self.text)}"
                )
        n = len(self.tokens)
        for edge in self.dependencies:
            if not (0 <= edge.head_index < n and 0 <= edge.dependent_index < n):
                raise ValidationError(
                    f"sentence {self.id!r}: dependency ({edge.head_index}, "
                    f"{edge.dependent_index}) out of range for {n} tokens"
                )
        for span in self.gold_aspects:
            if span.end > len(self.text):
                raise ValidationError(
                    f"sentence {self.id!r}: aspect span ({span.start}, {span.end}) "
                    f"exceeds text of length {len(self.text)}"
                )
            if span.token_start != -1 and not (
                0 <= span.token_start < span.token_end <= n
            ):
                raise ValidationError(
                    f"sentence {self.id!r}: aspect token span "
                    f"({span.token_start}, {span.token_end}) out of range"
                )

    def has_gold(self) -> bool:
        return bool(self.gold_aspects)


@dataclass(frozen=True)
class CorpusStats:
    sentence_count: int
    aspect_word_count: int
    non_aspect_word_count: int
    term_frequency: Mapping[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class Corpus:
    domain_name: str
    sentences: tuple[Sentence, ...]
    stats: CorpusStats

    @classmethod
    def from_sentences(cls, domain_name: str, sentences: Iterable[Sentence]) -> "Corpus":
        sentences = tuple(sentences)
        seen: set[str] = set()
        for s in sentences:
            if s.id in seen:
                raise ValidationError(f"duplicate sentence id {s.id!r}")
            seen.add(s.id)
        return cls(domain_name, sentences, _stats_for(sentences))

    def sentence_by_id(self, sid: str) -> Sentence:
        for s in self.sentences:
            if s.id == sid:
                return s
        raise KeyError(sid)


def _sentence_words(sentence: Sentence) -> list[tuple[str, bool]]:
    """(lowercased word, covered by a gold span) pairs for one sentence.

    Uses real tokens when present, otherwise a naive ``\\w+`` fallback so that
    XML-only corpora still produce Table-1-shaped statistics.
    """
    if sentence.tokens:
        covered: set[int] = set()
        for span in sentence.gold_aspects:
            if span.token_start != -1:
                covered.update(range(span.token_start, span.token_end))
        return [(t.lemma.lower(), t.index in covered) for t in sentence.tokens]
    out = []
    for m in _WORD_RE.finditer(sentence.text):
        in_gold = any(
            m.start() < span.end and m.end() > span.start
            for span in sentence.gold_aspects
        )
        out.append((m.group(0).lower(), in_gold))
    return out


def _stats_for(sentences: tuple[Sentence, ...]) -> CorpusStats:
    freq: Counter[str] = Counter()
    aspect_terms: set[str] = set()
    all_terms: set[str] = set()
    for sentence in sentences:
        for word, in_gold in _sentence_words(sentence):
            freq[word] += 1
            all_terms.add(word)
            if in_gold:
                aspect_terms.add(word)
    return CorpusStats(
        sentence_count=len(sentences),
        aspect_word_count=len(aspect_terms),
        non_aspect_word_count=len(all_terms - aspect_terms),
        term_frequency=dict(freq),
    )


def compute_stats(corpus: Corpus) -> CorpusStats:
    """Recompute corpus statistics; pure, repeated calls agree."""
    return _stats_for(corpus.sentences)


# ---------------------------------------------------------------------------
# SemEval-style XML
# ---------------------------------------------------------------------------

def parse_semeval_xml(raw: bytes | str, domain: str = "corpus") -> Corpus:
    """Parse ``sentences/sentence/text`` XML with ``aspectTerm`` from/to offsets.

    Tokens and dependencies stay empty until :func:`attach_annotations`.
    """
    if isinstance(raw, str):
        raw = raw.encode("utf-8")
    try:
        root = ET.fromstring(raw)
    except ET.ParseError as exc:
        line, col = exc.position
        raise ValidationError(
            f"malformed XML at line {line}, column {col}: {exc.msg}"
        ) from exc

    sentences = []
    for elem in root.iter("sentence"):
        sid = elem.get("id")
        if sid is None:
            raise ValidationError("sentence element without id attribute")
        text_elem = elem.find("text")
        text = text_elem.text if text_elem is not None and text_elem.text else ""
        spans = []
        for term in elem.iter("aspectTerm"):
            try:
                start = int(term.get("from", ""))
                end = int(term.get("to", ""))
            except ValueError as exc:
                raise ValidationError(
                    f"sentence {sid!r}: non-integer aspect offsets"
                ) from exc
            if not (0 <= start < end <= len(text)):
                raise ValidationError(
                    f"sentence {sid!r}: aspect span ({start}, {end}) exceeds "
                    f"text of length {len(text)}"
                )
            spans.append(AspectSpan(start, end))
        sentences.append(Sentence(id=sid, text=text, gold_aspects=tuple(spans)))
    return Corpus.from_sentences(domain, sentences)


# ---------------------------------------------------------------------------
# Annotated JSONL
# ---------------------------------------------------------------------------

_POS_VALUES = {p.value for p in Pos}


def _require(condition: bool, lineno: int, message: str) -> None:
    if not condition:
        raise ValidationError(f"line {lineno}: {message}")


def _parse_record(obj: object, lineno: int) -> Sentence:
    _require(isinstance(obj, dict), lineno, "record must be a JSON object")
    assert isinstance(obj, dict)
    for key in ("id", "text", "tokens", "deps"):
        _require(key in obj, lineno, f"missing field {key!r}")
    sid, text = obj["id"], obj["text"]
    _require(isinstance(sid, str) and bool(sid), lineno, "field 'id' must be a non-empty string")
    _require(isinstance(text, str), lineno, "field 'text' must be a string")

    tokens = []
    _require(isinstance(obj["tokens"], list), lineno, "field 'tokens' must be a list")
    for i, t in enumerate(obj["tokens"]):
        _require(isinstance(t, dict), lineno, f"tokens[{i}] must be an object")
        for key in ("text", "lemma", "pos", "start", "end"):
            _require(key in t, lineno, f"tokens[{i}] missing field {key!r}")
        _require(
            isinstance(t["text"], str) and bool(t["text"]),
            lineno,
            f"tokens[{i}].text must be a non-empty string",
        )
        _require(isinstance(t["lemma"], str), lineno, f"tokens[{i}].lemma must be a string")
        _require(
            t["pos"] in _POS_VALUES,
            lineno,
            f"tokens[{i}].pos must be one of {sorted(_POS_VALUES)}",
        )
        _require(
            isinstance(t["start"], int) and isinstance(t["end"], int),
            lineno,
            f"tokens[{i}].start/end must be integers",
        )
        _require(
            0 <= t["start"] < t["end"] <= len(text),
            lineno,
            f"tokens[{i}] offsets ({t['start']}, {t['end']}) out of range",
        )
        tokens.append(
            Token(
                text=t["text"],
                lemma=t["lemma"],
                pos=Pos(t["pos"]),
                index=i,
                start=t["start"],
                end=t["end"],
            )
        )

    deps = []
    _require(isinstance(obj["deps"], list), lineno, "field 'deps' must be a list")
    for i, d in enumerate(obj["deps"]):
        _require(isinstance(d, dict), lineno, f"deps[{i}] must be an object")
        for key in ("head", "dep", "rel"):
            _require(key in d, lineno, f"deps[{i}] missing field {key!r}")
        _require(
            isinstance(d["head"], int) and isinstance(d["dep"], int),
            lineno,
            f"deps[{i}].head/dep must be integers",
        )
        _require(
            0 <= d["head"] < len(tokens),
            lineno,
            f"deps[{i}].head {d['head']} out of range for {len(tokens)} tokens",
        )
        _require(
            0 <= d["dep"] < len(tokens),
            lineno,
            f"deps[{i}].dep {d['dep']} out of range for {len(tokens)} tokens",
        )
        _require(d["head"] != d["dep"], lineno, f"deps[{i}] is reflexive")
        _require(
            isinstance(d["rel"], str) and bool(d["rel"]),
            lineno,
            f"deps[{i}].rel must be a non-empty string",
        )
        deps.append(DependencyEdge(d["head"], d["dep"], d["rel"]))

    spans = []
    if "aspects" in obj:
        _require(isinstance(obj["aspects"], list), lineno, "field 'aspects' must be a list")
        for i, a in enumerate(obj["aspects"]):
            _require(isinstance(a, dict), lineno, f"aspects[{i}] must be an object")
            _require(
                isinstance(a.get("start"), int) and isinstance(a.get("end"), int),
                lineno,
                f"aspects[{i}].start/end must be integers",
            )
            _require(
                0 <= a["start"] < a["end"] <= len(text),
                lineno,
                f"aspects[{i}] offsets ({a['start']}, {a['end']}) out of range",
            )
            try:
                spans.append(_align_span(a["start"], a["end"], tokens, sid))
            except ValidationError as exc:
                raise ValidationError(f"line {lineno}: {exc}") from exc

    try:
        return Sentence(
            id=sid,
            text=text,
            tokens=tuple(tokens),
            dependencies=tuple(deps),
            gold_aspects=tuple(spans),
        )
    except ValidationError as exc:
        raise ValidationError(f"line {lineno}: {exc}") from exc


def _align_span(start: int, end: int, tokens: list[Token], sid: str) -> AspectSpan:
    """Convert a character span to a token-index span; partial overlaps round
    outward to whole tokens."""
    overlap = [t.index for t in tokens if t.start < end and t.end > start]
    if not overlap:
        raise ValidationError(
            f"sentence {sid!r}: aspect span ({start}, {end}) covers no token"
        )
    return AspectSpan(start, end, token_start=min(overlap), token_end=max(overlap) + 1)


def parse_annotated_jsonl(raw: bytes | str, domain: str = "corpus") -> Corpus:
    """Parse the annotated JSONL schema (one sentence per line).

    Lines starting with ``#`` are annotator provenance comments and are
    skipped.  Schema violations raise :class:`ValidationError` naming the
    line number and field.
    """
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    sentences = []
    seen: set[str] = set()
    for lineno, line in enumerate(raw.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"line {lineno}: invalid JSON: {exc.msg}") from exc
        sentence = _parse_record(obj, lineno)
        if sentence.id in seen:
            raise ValidationError(f"line {lineno}: duplicate sentence id {sentence.id!r}")
        seen.add(sentence.id)
        sentences.append(sentence)
    return Corpus.from_sentences(domain, sentences)


def serialize_jsonl(corpus: Corpus) -> str:
    """Canonical JSONL form; re-parsing yields a structurally equal corpus."""
    lines = []
    for s in corpus.sentences:
        record: dict = {
            "id": s.id,
            "text": s.text,
            "tokens": [
                {"text": t.text, "lemma": t.lemma, "pos": t.pos.value,
                 "start": t.start, "end": t.end}
                for t in s.tokens
            ],
            "deps": [
                {"head": d.head_index, "dep": d.dependent_index, "rel": d.relation}
                for d in s.dependencies
            ],
        }
        if s.gold_aspects:
            record["aspects"] = [
                {"start": a.start, "end": a.end} for a in s.gold_aspects
            ]
        lines.append(json.dumps(record, ensure_ascii=False))
    return "\n".join(lines) + ("\n" if lines else "")


def attach_annotations(corpus: Corpus, annotations: Corpus) -> Corpus:
    """Merge token/dependency annotations into a (typically XML-parsed) corpus.

    Annotation sentence ids must be a superset of the corpus ids.  Gold spans
    of the corpus win over any carried by the annotations and are re-expressed
    as token-index spans against the annotation tokens.
    """
    by_id = {s.id: s for s in annotations.sentences}
    missing = [s.id for s in corpus.sentences if s.id not in by_id]
    if missing:
        raise ValidationError(
            "annotations missing sentence ids: " + ", ".join(repr(i) for i in missing)
        )
    merged = []
    for s in corpus.sentences:
        ann = by_id[s.id]
        if ann.text != s.text:
            raise ValidationError(
                f"sentence {s.id!r}: annotation text differs from corpus text"
            )
        golds = s.gold_aspects if s.gold_aspects else ann.gold_aspects
        spans = tuple(
            _align_span(g.start, g.end, list(ann.tokens), s.id) for g in golds
        )
        merged.append(replace(ann, gold_aspects=spans))
    return Corpus.from_sentences(corpus.domain_name, merged)
