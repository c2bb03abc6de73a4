"""Textbook snippet corpus with BM25 ranking.

A corpus is a JSONL file, one snippet object per line with fields
``id``, ``source_title``, ``text`` and optional ``section``. The index is
immutable once built; rebuild to ingest a new corpus.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

_TOKEN_RE = re.compile(r"[a-z0-9]+")


class CorpusError(Exception):
    pass


class DuplicateSnippetId(CorpusError):
    def __init__(self, snippet_id: str) -> None:
        super().__init__(f"duplicate snippet id: {snippet_id}")


class EmptyCorpus(CorpusError):
    pass


class UnknownSnippet(CorpusError):
    def __init__(self, snippet_id: str) -> None:
        super().__init__(f"snippet id not in index: {snippet_id}")


@dataclass(frozen=True)
class Snippet:
    id: str
    source_title: str
    text: str
    section: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise CorpusError("snippet id must be non-empty")
        if not self.text.strip():
            raise CorpusError(f"snippet {self.id} has empty text")


@dataclass(frozen=True)
class Bm25Params:
    k1: float = 1.2
    b: float = 0.75

    def __post_init__(self) -> None:
        if self.k1 < 0:
            raise ValueError(f"k1 must be >= 0, got {self.k1}")
        if not 0.0 <= self.b <= 1.0:
            raise ValueError(f"b must be in [0, 1], got {self.b}")


@dataclass(frozen=True)
class ScoredSnippet:
    snippet: Snippet
    score: float


def tokenize(text: str) -> list[str]:
    """Lowercase and split on non-alphanumeric runs, dropping empties."""
    return _TOKEN_RE.findall(text.lower())


@dataclass
class CorpusIndex:
    params: Bm25Params
    n_docs: int = 0
    avg_doc_length: float = 0.0
    doc_lengths: dict[str, int] = field(default_factory=dict)
    postings: dict[str, dict[str, int]] = field(default_factory=dict)
    snippets: dict[str, Snippet] = field(default_factory=dict)

    def idf(self, term: str) -> float:
        # Robertson/Sparck-Jones idf floored at zero so common terms cannot
        # contribute negative scores.
        df = len(self.postings.get(term, ()))
        if df == 0:
            return 0.0
        return max(0.0, math.log((self.n_docs - df + 0.5) / (df + 0.5)))


def build_index(snippets: Iterable[Snippet], params: Bm25Params | None = None) -> CorpusIndex:
    """Single-pass ingestion of a snippet stream."""
    index = CorpusIndex(params=params if params is not None else Bm25Params())
    total_len = 0
    for snippet in snippets:
        if snippet.id in index.snippets:
            raise DuplicateSnippetId(snippet.id)
        tokens = tokenize(snippet.text)
        index.snippets[snippet.id] = snippet
        index.doc_lengths[snippet.id] = len(tokens)
        total_len += len(tokens)
        for term, tf in Counter(tokens).items():
            index.postings.setdefault(term, {})[snippet.id] = tf
    index.n_docs = len(index.snippets)
    if index.n_docs == 0:
        raise EmptyCorpus("corpus stream yielded no snippets")
    index.avg_doc_length = total_len / index.n_docs
    return index


def score(index: CorpusIndex, query: list[str], snippet_id: str) -> float:
    """BM25 score of one snippet for a tokenized query.

    The sum runs over query tokens as given, so a duplicated query term
    contributes twice.
    """
    if snippet_id not in index.doc_lengths:
        raise UnknownSnippet(snippet_id)
    k1, b = index.params.k1, index.params.b
    dl = index.doc_lengths[snippet_id]
    norm = k1 * (1.0 - b + b * dl / index.avg_doc_length) if index.avg_doc_length > 0 else k1
    total = 0.0
    for term in query:
        tf = index.postings.get(term, {}).get(snippet_id, 0)
        if tf == 0:
            continue
        total += index.idf(term) * (tf * (k1 + 1.0)) / (tf + norm)
    return total


def top_k(index: CorpusIndex, query: str, k: int) -> list[ScoredSnippet]:
    """Best-scoring snippets, descending; ties broken by ascending id.

    Zero-score snippets are excluded, so an all-out-of-vocabulary query
    returns an empty list.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    tokens = tokenize(query)
    candidates: set[str] = set()
    for term in set(tokens):
        candidates.update(index.postings.get(term, ()))
    scored = []
    for snippet_id in candidates:
        s = score(index, tokens, snippet_id)
        if s > 0.0:
            scored.append(ScoredSnippet(index.snippets[snippet_id], s))
    scored.sort(key=lambda item: (-item.score, item.snippet.id))
    return scored[:k]


def read_corpus(path: Path | str) -> Iterator[Snippet]:
    """Stream snippets from a JSONL corpus file."""
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}:{line_no}: bad JSON: {exc}") from exc
            try:
                yield Snippet(
                    id=record["id"],
                    source_title=record["source_title"],
                    text=record["text"],
                    section=record.get("section"),
                )
            except KeyError as exc:
                raise CorpusError(f"{path}:{line_no}: missing field {exc}") from exc


def load_index(path: Path | str, params: Bm25Params | None = None) -> CorpusIndex:
    return build_index(read_corpus(path), params)
