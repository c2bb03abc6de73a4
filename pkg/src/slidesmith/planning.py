"""Slide planning: the plan prompt, plan parsing, and archetype validation.

A plan is an ordered list of (title, description) slide specs. Validation maps
slide titles onto the ten-archetype structural guide by a deterministic
keyword table and reports required archetypes that no slide covers.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .gateway import LlmGateway, estimate_tokens, load_template, render_template, require_complete
from .retrieval import SourceKind, SourceSelection, SourceSummary

logger = logging.getLogger(__name__)

MIN_PLAN_SLIDES = 6


class PlanningError(Exception):
    pass


class UnparseablePlan(PlanningError):
    pass


class ContextBudgetExceeded(PlanningError):
    pass


class Archetype(Enum):
    TITLE = "Title"
    ROADMAP = "Roadmap"
    INTRODUCTION = "Introduction"
    WHY_IT_MATTERS = "WhyItMatters"
    LIMITATIONS = "Limitations"
    RECENT_ADVANCEMENTS = "RecentAdvancements"
    CRITICAL_PERSPECTIVES = "CriticalPerspectives"
    FUTURE_DIRECTIONS = "FutureDirections"
    CONCLUSION = "Conclusion"
    REFERENCES = "References"


REQUIRED_ARCHETYPES = frozenset(
    {
        Archetype.TITLE,
        Archetype.ROADMAP,
        Archetype.INTRODUCTION,
        Archetype.CONCLUSION,
        Archetype.REFERENCES,
    }
)


@dataclass(frozen=True)
class GuideEntry:
    archetype: Archetype
    heading: str
    description: str
    annotations: tuple[str, ...] = ()

    @property
    def required(self) -> bool:
        return self.archetype in REQUIRED_ARCHETYPES


@dataclass(frozen=True)
class StructuralGuide:
    entries: tuple[GuideEntry, ...]

    def __post_init__(self) -> None:
        archetypes = [entry.archetype for entry in self.entries]
        if archetypes != list(Archetype):
            raise PlanningError("structural guide must list all ten archetypes in order")


def default_guide() -> StructuralGuide:
    return StructuralGuide(
        entries=(
            GuideEntry(
                Archetype.TITLE,
                "Title",
                "Presents the topic, instructor, and session context clearly.",
            ),
            GuideEntry(
                Archetype.ROADMAP,
                "Roadmap / Table of Contents",
                "Outlines the structure of the presentation to help learners anticipate the flow.",
                (
                    "Signaling: Highlight section headings to draw attention.",
                    "Intrinsic Load Management: Provide a preview that organizes upcoming information.",
                ),
            ),
            GuideEntry(
                Archetype.INTRODUCTION,
                "Introduction to the Topic",
                "Uses textbook-derived content when available to establish stable, peer-reviewed "
                "definitions and foundational concepts, supplemented by paper introductions if needed.",
                ("Coherence: Limit to essential terminology and ideas.",),
            ),
            GuideEntry(
                Archetype.WHY_IT_MATTERS,
                "Why This Topic Matters",
                "Begins with high-level concepts and incorporates recent developments to demonstrate "
                "currency and relevance.",
                ("Signaling: Use bolded key terms and application-oriented language.",),
            ),
            GuideEntry(
                Archetype.LIMITATIONS,
                "Motivating Limitations of Early Approaches",
                "Establish limitations and case-specific drawbacks if applicable.",
                (
                    "Coherence: Present only limitations directly tied to motivating later content.",
                    "Signaling: Highlight the link between each limitation and the need for advancement.",
                ),
            ),
            GuideEntry(
                Archetype.RECENT_ADVANCEMENTS,
                "Recent Advancements",
                "Primarily from paper-derived summaries, maintain a consistent, clear structure for "
                "each paper.",
                ("Signaling: Each bullet should follow a consistent schema: Contribution/Metric - Impact.",),
            ),
            GuideEntry(
                Archetype.CRITICAL_PERSPECTIVES,
                "Critical Perspectives",
                "Provide a holistic, balanced view.",
                (
                    "Coherence: Tie critiques back to material presented earlier.",
                    "Signaling: Use parallel phrasing to make contrasts explicit.",
                ),
            ),
            GuideEntry(
                Archetype.FUTURE_DIRECTIONS,
                "Future Directions",
                "Draws mainly from paper discussion and future work sections, optionally integrating "
                "textbook outlooks for long-term trends.",
                ("Germane Load: Encourage synthesis with previously discussed content.",),
            ),
            GuideEntry(
                Archetype.CONCLUSION,
                "Conclusion",
                "Reinforces 3-5 key takeaways aligned with learning objectives.",
                (
                    "Signaling: Parallel summary bullet structure to strengthen recall.",
                    "Coherence: Avoid redundancy with earlier slides by focusing on synthesis.",
                ),
            ),
            GuideEntry(
                Archetype.REFERENCES,
                "References",
                "Lists sources cited in slides, including paper DOIs/arXiv IDs and textbook details.",
            ),
        )
    )


def guide_text(guide: StructuralGuide) -> str:
    """Numbered guide rendering bound into the plan prompt."""
    lines = []
    for i, entry in enumerate(guide.entries, start=1):
        lines.append(f"{i}. {entry.heading} - {entry.description}")
        for note in entry.annotations:
            lines.append(f"   {note}")
    return "\n".join(lines)


@dataclass(frozen=True)
class SlideSpec:
    index: int
    title: str
    description: str

    def __post_init__(self) -> None:
        if not self.title.strip() or not self.description.strip():
            raise PlanningError(f"slide {self.index} needs a non-empty title and description")


@dataclass(frozen=True)
class SlidePlan:
    topic: str
    source_kind: SourceKind
    slides: tuple[SlideSpec, ...]


@dataclass
class PlanDiagnostics:
    missing_archetypes: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    ok: bool = True


def format_context(summaries: tuple[SourceSummary, ...] | list[SourceSummary]) -> str:
    blocks = []
    for i, summary in enumerate(summaries, start=1):
        cite = summary.citation
        authors = ", ".join(cite.authors) if cite.authors else "n/a"
        year = cite.year if cite.year is not None else "n/a"
        blocks.append(
            f"[Source {i}] {cite.title}\nAuthors: {authors}\nYear: {year}\nID: {cite.ref_id}\n{summary.body}"
        )
    return "\n\n".join(blocks)


def build_plan_prompt(
    topic: str,
    source_kind: SourceKind,
    context: SourceSelection,
    guide: Optional[StructuralGuide] = None,
    extra_instructions: str = "",
    context_budget: int = 12000,
) -> str:
    if not context.ranked:
        raise PlanningError("plan prompt needs a non-empty source selection")
    template = load_template("slide_plan")
    source_type = "research paper summaries" if source_kind is SourceKind.ARXIV else "textbook snippets"
    prompt = render_template(
        template,
        {
            "topic": topic,
            "source_type": source_type,
            "structural_guide": guide_text(guide if guide is not None else default_guide()),
            "context": format_context(context.ranked),
        },
    )
    if extra_instructions:
        prompt += f"\n\nRevision instructions from the instructor:\n{extra_instructions}\n"
    if estimate_tokens(prompt) > context_budget:
        raise ContextBudgetExceeded(
            f"plan prompt is ~{estimate_tokens(prompt)} tokens; budget is {context_budget}"
        )
    return prompt


_SLIDE_HEADER_RE = re.compile(r"^\s*(?:[*#>\-\s]*)Slide\s+(\d+)\s*[:.\-]\s*(.+?)\s*$", re.IGNORECASE)
_DESCRIPTION_RE = re.compile(r"^\s*[-*]?\s*(?:\*\*)?Description(?:\*\*)?\s*[:.]\s*(.*)$", re.IGNORECASE)


def _clean_markup(text: str) -> str:
    return text.strip().strip("*_").strip()


def parse_plan(
    completion: str,
    topic: str = "",
    source_kind: SourceKind = SourceKind.ARXIV,
) -> SlidePlan:
    """Parse ``Slide N: <title>`` blocks with a ``Description:`` line each.

    Out-of-sequence slide numbers are renumbered contiguously with a warning;
    blocks without any description text are dropped with a warning.
    """
    lines = completion.splitlines()
    blocks: list[tuple[int, str, list[str]]] = []
    current: Optional[tuple[int, str, list[str]]] = None
    for line in lines:
        header = _SLIDE_HEADER_RE.match(line)
        if header:
            if current:
                blocks.append(current)
            current = (int(header.group(1)), _clean_markup(header.group(2)), [])
        elif current is not None:
            current[2].append(line)
    if current:
        blocks.append(current)
    if len(blocks) < 2:
        raise UnparseablePlan(f"found {len(blocks)} slide blocks; need at least 2")

    slides: list[SlideSpec] = []
    renumbered = False
    for position, (number, title, body_lines) in enumerate(blocks, start=1):
        description_parts: list[str] = []
        in_description = False
        for body_line in body_lines:
            desc = _DESCRIPTION_RE.match(body_line)
            if desc:
                in_description = True
                if desc.group(1).strip():
                    description_parts.append(_clean_markup(desc.group(1)))
            elif in_description and body_line.strip():
                description_parts.append(body_line.strip())
        if not description_parts:
            # fall back to any body text rather than inventing a description
            description_parts = [l.strip() for l in body_lines if l.strip()]
        if not description_parts:
            logger.warning("dropping slide block %r: no description", title)
            continue
        if number != position:
            renumbered = True
        slides.append(SlideSpec(index=len(slides) + 1, title=title, description=" ".join(description_parts)))
    if renumbered:
        logger.warning("plan slide numbers were not contiguous; renumbered")
    if len(slides) < 2:
        raise UnparseablePlan("fewer than 2 usable slide blocks after parsing")
    return SlidePlan(topic=topic, source_kind=source_kind, slides=tuple(slides))


def serialize_plan(plan: SlidePlan) -> str:
    blocks = [
        f"Slide {spec.index}: {spec.title}\n- Description: {spec.description}"
        for spec in plan.slides
    ]
    return "\n\n".join(blocks) + "\n"


# First matching rule wins, so a slide maps to at most one archetype. More
# specific phrases sort before generic ones.
_ARCHETYPE_RULES: tuple[tuple[Archetype, tuple[str, ...]], ...] = (
    (Archetype.REFERENCES, ("reference", "bibliography")),
    (Archetype.ROADMAP, ("roadmap", "table of contents", "outline", "agenda")),
    (Archetype.RECENT_ADVANCEMENTS, ("recent advancement", "recent advance", "state of the art")),
    (Archetype.CRITICAL_PERSPECTIVES, ("critical perspective", "critique", "criticism")),
    (Archetype.FUTURE_DIRECTIONS, ("future direction", "future work", "outlook", "future")),
    (Archetype.LIMITATIONS, ("limitation", "drawback", "shortcoming")),
    (Archetype.WHY_IT_MATTERS, ("matter", "motivation", "importance", "why it")),
    (Archetype.CONCLUSION, ("conclusion", "key takeaway", "summary of the presentation")),
    (Archetype.INTRODUCTION, ("introduction", "what is", "overview of the topic")),
    (Archetype.TITLE, ("title",)),
)


def classify_slide(title: str) -> Optional[Archetype]:
    lowered = title.lower()
    for archetype, needles in _ARCHETYPE_RULES:
        if any(needle in lowered for needle in needles):
            return archetype
    return None


def validate_plan(plan: SlidePlan, guide: Optional[StructuralGuide] = None) -> PlanDiagnostics:
    """Pure archetype-coverage check; ok iff every required archetype is covered."""
    guide = guide if guide is not None else default_guide()
    diagnostics = PlanDiagnostics()
    covered: set[Archetype] = set()
    for spec in plan.slides:
        archetype = classify_slide(spec.title)
        if archetype is not None:
            covered.add(archetype)
    for entry in guide.entries:
        if entry.archetype not in covered:
            diagnostics.missing_archetypes.append(entry.archetype.value)
            if entry.required:
                diagnostics.ok = False
    if len(plan.slides) < MIN_PLAN_SLIDES:
        diagnostics.warnings.append(
            f"plan has {len(plan.slides)} slides; at least {MIN_PLAN_SLIDES} expected"
        )
    if plan.slides and classify_slide(plan.slides[0].title) is not Archetype.TITLE:
        diagnostics.warnings.append("slide 1 does not look like a title slide")
    if plan.slides and classify_slide(plan.slides[-1].title) is not Archetype.REFERENCES:
        diagnostics.warnings.append("last slide does not look like a references slide")
    return diagnostics


def plan_prompt_and_parse(
    gateway: LlmGateway,
    topic: str,
    source_kind: SourceKind,
    context: SourceSelection,
    guide: Optional[StructuralGuide] = None,
    extra_instructions: str = "",
) -> SlidePlan:
    """One planning round trip: build prompt, complete, parse."""
    prompt = build_plan_prompt(topic, source_kind, context, guide, extra_instructions)
    completion = gateway.complete(load_template("slide_plan").role, prompt)
    return parse_plan(require_complete(completion, "slide plan"), topic=topic, source_kind=source_kind)
