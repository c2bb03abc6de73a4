"""Source gathering: keyword expansion, textbook pull, paper summaries, selection."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from ..corpus import CorpusIndex, top_k
from ..gateway import (
    LlmGateway,
    estimate_tokens,
    load_template,
    render_template,
    require_complete,
)
from ..gateway.client import FinishReason
from .arxiv import PaperRecord

logger = logging.getLogger(__name__)

TRUNCATION_MARKER = "\n[... truncated to fit context budget]"
DEFAULT_CONTEXT_BUDGET = 12000  # estimated tokens per prompt


class SourceKind(Enum):
    ARXIV = "arxiv"
    TEXTBOOK = "textbook"


class RetrievalError(Exception):
    pass


class EmptyKeywordSet(RetrievalError):
    pass


class SummaryTruncated(RetrievalError):
    pass


class NoneSelected(RetrievalError):
    pass


@dataclass(frozen=True)
class KeywordSet:
    keywords: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.keywords:
            raise EmptyKeywordSet("keyword set must contain at least one keyword")
        for kw in self.keywords:
            if not kw or "," in kw:
                raise RetrievalError(f"bad keyword: {kw!r}")


@dataclass(frozen=True)
class Citation:
    title: str
    authors: tuple[str, ...]
    year: Optional[int]
    ref_id: str


@dataclass(frozen=True)
class SourceSummary:
    provenance: SourceKind
    body: str
    citation: Citation
    source_ref: str  # arXiv id or snippet id


@dataclass(frozen=True)
class SourceSelection:
    ranked: tuple[SourceSummary, ...]
    rationale: Optional[str] = None


def parse_keywords(text: str) -> KeywordSet:
    parts = [part.strip() for part in text.replace("\n", ",").split(",")]
    keywords = tuple(part for part in parts if part)
    if not keywords:
        raise EmptyKeywordSet(f"completion parsed to zero keywords: {text!r}")
    return KeywordSet(keywords)


def generate_keywords(gateway: LlmGateway, topic: str) -> KeywordSet:
    if not topic.strip():
        raise RetrievalError("topic must be non-empty")
    template = load_template("keywords")
    prompt = render_template(template, {"topic": topic})
    completion = gateway.complete(template.role, prompt)
    return parse_keywords(require_complete(completion, "keyword list"))


def retrieve_textbook(
    topic: str,
    keywords: KeywordSet,
    k: int,
    index: CorpusIndex,
    query_source: str = "keywords",
) -> list[SourceSummary]:
    """Top-k snippets wrapped as sources; snippet text passes through verbatim
    and no model call is made."""
    query = topic if query_source == "topic" else " ".join(keywords.keywords)
    summaries = []
    for hit in top_k(index, query, k):
        snippet = hit.snippet
        summaries.append(
            SourceSummary(
                provenance=SourceKind.TEXTBOOK,
                body=snippet.text,
                citation=Citation(
                    title=snippet.source_title,
                    authors=(),
                    year=None,
                    ref_id=snippet.id,
                ),
                source_ref=snippet.id,
            )
        )
    return summaries


def summarize(
    gateway: LlmGateway,
    record: PaperRecord,
    fulltext: Optional[str] = None,
    context_budget: int = DEFAULT_CONTEXT_BUDGET,
) -> SourceSummary:
    if not record.abstract:
        raise RetrievalError(f"paper {record.arxiv_id} has no abstract to summarize")
    template = load_template("summarize")
    paper_text = fulltext if fulltext is not None else record.abstract
    fixed = render_template(
        template, {"Title": record.title, "Abstract": record.abstract, "Paper": ""}
    )
    room = context_budget - estimate_tokens(fixed)
    if estimate_tokens(paper_text) > room:
        keep_chars = max(0, room * 4 - len(TRUNCATION_MARKER))
        paper_text = paper_text[:keep_chars] + TRUNCATION_MARKER
    prompt = render_template(
        template, {"Title": record.title, "Abstract": record.abstract, "Paper": paper_text}
    )
    completion = gateway.complete(template.role, prompt)
    if completion.finish is FinishReason.TRUNCATED:
        raise SummaryTruncated(f"summary of {record.arxiv_id} was truncated")
    return SourceSummary(
        provenance=SourceKind.ARXIV,
        body=completion.text,
        citation=Citation(
            title=record.title,
            authors=record.authors,
            year=record.updated.year,
            ref_id=record.arxiv_id,
        ),
        source_ref=record.arxiv_id,
    )


def _normalize_title(title: str) -> str:
    return re.sub(r"[^a-z0-9]+", " ", title.lower()).strip()


def format_candidates(candidates: list[SourceSummary]) -> str:
    blocks = []
    for i, cand in enumerate(candidates, start=1):
        year = f", {cand.citation.year}" if cand.citation.year else ""
        blocks.append(f"{i}. {cand.citation.title}{year} [{cand.source_ref}]\n{cand.body}")
    return "\n\n".join(blocks)


def select_sources(
    gateway: LlmGateway,
    topic: str,
    candidates: list[SourceSummary],
    limit: int = 3,
) -> SourceSelection:
    """Rank-and-subset step: the completion is matched back onto candidates by
    normalized-title containment, so the selection can never invent sources."""
    if not candidates:
        raise RetrievalError("select_sources needs a non-empty candidate list")
    template = load_template("select_sources")
    prompt = render_template(
        template, {"topic": topic, "summaries": format_candidates(candidates)}
    )
    completion = gateway.complete(template.role, prompt)
    text = require_complete(completion, "source selection")
    ranked: list[SourceSummary] = []
    for line in text.splitlines():
        line_norm = _normalize_title(line)
        if not line_norm:
            continue
        matched = None
        for cand in candidates:
            if cand in ranked:
                continue
            title_norm = _normalize_title(cand.citation.title)
            by_title = bool(title_norm) and title_norm in line_norm
            by_ref = cand.source_ref.lower() in line.lower()
            if by_title or by_ref:
                matched = cand
                break
        if matched is not None:
            ranked.append(matched)
            if len(ranked) >= limit:
                break
        else:
            logger.warning("selection line matched no candidate: %r", line[:80])
    if not ranked:
        raise NoneSelected("selection completion named no known candidate")
    return SourceSelection(ranked=tuple(ranked))


__all__ = [
    "Citation",
    "EmptyKeywordSet",
    "KeywordSet",
    "NoneSelected",
    "RetrievalError",
    "SourceKind",
    "SourceSelection",
    "SourceSummary",
    "SummaryTruncated",
    "format_candidates",
    "generate_keywords",
    "parse_keywords",
    "retrieve_textbook",
    "select_sources",
    "summarize",
]
