"""Deterministic rule pipeline: sentence split, tokenize, tag, lemmatize,
dependency-parse.

The pipeline is pure rule code over bundled word lists, so its output is
fully reproducible; the name/version pair below is stamped into every
output file and must be bumped whenever a rule or list changes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .lexicon import (
    ADJECTIVES,
    ADVERBS,
    BE_FORMS,
    CLOSED_CLASS,
    COORDINATORS,
    DETERMINERS,
    IRREGULAR_NOUNS,
    POSSESSIVES,
    PREPOSITIONS,
    VERB_LEMMAS,
)

PIPELINE_NAME = "aspectra-rulepipe"
PIPELINE_VERSION = "1.0.0"

TOKEN_RE = re.compile(r"[A-Za-z]+(?:'[A-Za-z]+)?|\d+(?:\.\d+)?|[^\sA-Za-z\d]")
SENTENCE_BREAK = re.compile(r"(?<=[.!?])\s+(?=[A-Z0-9\"'(])")


@dataclass
class Tok:
    text: str
    lemma: str
    pos: str
    start: int
    end: int
    index: int = -1


@dataclass
class ParseResult:
    tokens: list[Tok]
    deps: list[tuple[int, int, str]]
    parsed: bool = True


def split_sentences(line: str) -> list[str]:
    """Heuristic split after sentence-final punctuation followed by an
    uppercase or numeric start; good enough for review text."""
    line = line.strip()
    if not line:
        return []
    return [part for part in SENTENCE_BREAK.split(line) if part.strip()]


def tokenize(text: str) -> list[Tok]:
    tokens = []
    for i, match in enumerate(TOKEN_RE.finditer(text)):
        surface = match.group(0)
        tokens.append(Tok(surface, "", "", match.start(), match.end(), i))
    return tokens


def _lemma_noun(word: str) -> str:
    if word in IRREGULAR_NOUNS:
        return IRREGULAR_NOUNS[word]
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith(("ches", "shes", "sses", "xes", "zes")):
        return word[:-2]
    if word.endswith("s") and not word.endswith(("ss", "us", "is")) and len(word) > 3:
        return word[:-1]
    return word


def tag(tokens: list[Tok]) -> None:
    """Assign coarse POS and lemma in place."""
    for i, tok in enumerate(tokens):
        word = tok.text.lower()
        if not tok.text[0].isalpha():
            tok.pos, tok.lemma = "OTHER", word
        elif word in VERB_LEMMAS:
            tok.pos, tok.lemma = "VERB", VERB_LEMMAS[word]
        elif word in CLOSED_CLASS:
            tok.pos, tok.lemma = "OTHER", word
        elif word in ADVERBS:
            tok.pos, tok.lemma = "ADV", word
        elif word in ADJECTIVES:
            tok.pos, tok.lemma = "ADJ", word
        elif word.endswith("ly") and len(word) > 4:
            tok.pos, tok.lemma = "ADV", word
        elif word.endswith(("ous", "ful", "ible", "able", "ive", "less")) and len(word) > 5:
            tok.pos, tok.lemma = "ADJ", word
        elif word.endswith("ing") and len(word) > 5:
            tok.pos, tok.lemma = "VERB", word[:-3]
        else:
            tok.pos, tok.lemma = "NOUN", _lemma_noun(word)
    # "pretty good" reads as intensifier, predicate "pretty" stays ADJ
    for i, tok in enumerate(tokens[:-1]):
        if tok.pos == "ADJ" and tok.text.lower() == "pretty" \
                and tokens[i + 1].pos == "ADJ":
            tok.pos = "ADV"


def _noun_phrase_edges(tokens, start, head, deps):
    """det/poss/amod/compound edges for the span [start, head]."""
    nouns = [j for j in range(start, head + 1) if tokens[j].pos == "NOUN"]
    for j in range(start, head):
        tok = tokens[j]
        word = tok.text.lower()
        if tok.pos == "OTHER" and word in POSSESSIVES:
            deps.append((head, j, "poss"))
        elif tok.pos == "OTHER" and word in DETERMINERS:
            deps.append((head, j, "det"))
        elif tok.pos == "ADJ":
            deps.append((head, j, "amod"))
        elif tok.pos == "NOUN" and j in nouns and j != head:
            deps.append((head, j, "compound"))


SUBJECT_PRONOUNS = frozenset("i we you he she it they".split())


def _phrase_head(tokens, lo, hi):
    """Index of the last noun in [lo, hi), or -1."""
    for j in range(hi - 1, lo - 1, -1):
        if tokens[j].pos == "NOUN":
            return j
    return -1


def _run_head(tokens, j, hi):
    """Head of the contiguous noun run starting at j."""
    while j + 1 < hi and tokens[j + 1].pos == "NOUN":
        j += 1
    return j


def _subject(tokens, lo, verb):
    head = _phrase_head(tokens, lo, verb)
    if head != -1:
        return head
    for j in range(verb - 1, lo - 1, -1):
        if tokens[j].text.lower() in SUBJECT_PRONOUNS:
            return j
    return -1


def _parse_clause(tokens, lo, hi, deps):
    """Copular/transitive clause rules; returns the clause root index."""
    verb = next(
        (j for j in range(lo, hi) if tokens[j].pos == "VERB"), -1
    )
    if verb == -1:
        # verbless fragment ("Great pizza!"): root is the NP head
        head = _phrase_head(tokens, lo, hi)
        if head == -1:
            return -1
        _noun_phrase_edges(tokens, lo, head, deps)
        return head

    subj = _subject(tokens, lo, verb)
    is_copula = tokens[verb].text.lower() in BE_FORMS
    pred = -1
    if is_copula:
        # predicate adjective unless it modifies a following noun, in
        # which case the predicate is nominal
        adj = next(
            (j for j in range(verb + 1, hi) if tokens[j].pos == "ADJ"), -1
        )
        nominal = _phrase_head(tokens, verb + 1, hi)
        pred = nominal if adj != -1 and nominal > adj else (
            adj if adj != -1 else nominal
        )
    if is_copula and pred != -1:
        root = pred
        deps.append((root, verb, "cop"))
        if subj != -1:
            deps.append((root, subj, "nsubj"))
            _noun_phrase_edges(tokens, lo, subj, deps)
        if tokens[pred].pos == "NOUN":
            _noun_phrase_edges(tokens, verb + 1, pred, deps)
        else:
            for j in range(verb + 1, pred):
                if tokens[j].pos == "ADV":
                    deps.append((root, j, "advmod"))
    else:
        root = verb
        if subj != -1:
            deps.append((root, subj, "nsubj"))
            if tokens[subj].pos == "NOUN":
                _noun_phrase_edges(tokens, lo, subj, deps)
        floor = verb + 1
        j = verb + 1
        while j < hi:
            tok = tokens[j]
            word = tok.text.lower()
            if tok.pos == "OTHER" and word in PREPOSITIONS:
                obl_head = _phrase_head(tokens, j + 1, hi)
                if obl_head != -1:
                    deps.append((obl_head, j, "case"))
                    deps.append((root, obl_head, "obl"))
                    _noun_phrase_edges(tokens, j + 1, obl_head, deps)
                    j = obl_head
                    floor = obl_head + 1
            elif tok.pos == "NOUN":
                obj_head = _run_head(tokens, j, hi)
                deps.append((root, obj_head, "obj"))
                _noun_phrase_edges(tokens, floor, obj_head, deps)
                j = obj_head
                floor = obj_head + 1
            elif tok.pos == "ADV":
                deps.append((root, j, "advmod"))
            j += 1
    return root


def parse(tokens: list[Tok]) -> ParseResult:
    """Dependency edges for one sentence (clauses split at coordinators)."""
    deps: list[tuple[int, int, str]] = []
    if not tokens:
        return ParseResult(tokens, deps)

    content = [t for t in tokens if t.text[0].isalpha()]
    if not content:
        return ParseResult(tokens, deps)

    # clause boundaries at coordinating conjunctions followed by a verb
    boundaries = [0]
    cc_indices = []
    for j, tok in enumerate(tokens):
        if tok.text.lower() in COORDINATORS and any(
            t.pos == "VERB" for t in tokens[j + 1:]
        ):
            boundaries.append(j + 1)
            cc_indices.append(j)
    boundaries.append(len(tokens))

    try:
        roots = []
        for lo, hi in zip(boundaries, boundaries[1:]):
            span_hi = hi - 1 if hi - 1 in cc_indices else hi
            root = _parse_clause(tokens, lo, span_hi, deps)
            if root != -1:
                roots.append(root)
        if not roots:
            return ParseResult(tokens, [], parsed=False)
        for cc, later_root in zip(cc_indices, roots[1:]):
            deps.append((later_root, cc, "cc"))
            deps.append((roots[0], later_root, "conj"))
        # trailing punctuation hangs off the first root
        for j, tok in enumerate(tokens):
            if tok.pos == "OTHER" and not tok.text[0].isalnum():
                if not any(d[1] == j for d in deps):
                    deps.append((roots[0], j, "punct"))
        deps = [d for d in deps if d[0] != d[1]]
        return ParseResult(tokens, deps)
    except Exception:
        return ParseResult(tokens, [], parsed=False)


def annotate_sentence(sid: str, text: str) -> tuple[dict, bool]:
    """One schema record for one sentence; the flag reports parse success."""
    tokens = tokenize(text)
    tag(tokens)
    result = parse(tokens)
    record = {
        "id": sid,
        "text": text,
        "tokens": [
            {"text": t.text, "lemma": t.lemma, "pos": t.pos,
             "start": t.start, "end": t.end}
            for t in tokens
        ],
        "deps": [
            {"head": h, "dep": d, "rel": r} for h, d, r in result.deps
        ],
    }
    return record, result.parsed


def header_comment() -> str:
    return f"# annotator={PIPELINE_NAME}/{PIPELINE_VERSION}"
