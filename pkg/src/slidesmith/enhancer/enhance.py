"""Deck enhancement: figure macros and togglable instructor comments.

The enhancement prompts instruct the model to only add; this module is where
that instruction becomes a contract. Every candidate deck is re-parsed and
structurally diffed against the original, and any alteration beyond macro and
comment insertions rejects the candidate, leaving the original deck in place.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..codegen.beamer import BeamerSource, Frame, parse_beamer, strip_fences
from ..gateway import LlmGateway, load_template, render_template, require_complete
from ..planning import format_context
from ..retrieval import SourceSelection
from .macros import FIGURE_KINDS, INLINE_KINDS

logger = logging.getLogger(__name__)


class CommentCategory(Enum):
    CONCEPTUAL = "conceptual"
    TEACHING_STRATEGY = "teaching_strategy"
    STUDENT_CONTEXT = "student_context"
    LECTURE_FLOW = "lecture_flow"
    TEXTBOOK_INTEGRATION = "textbook_integration"
    DISCUSSION_ACTIVITY = "discussion_activity"


@dataclass(frozen=True)
class InstructorComment:
    category: CommentCategory
    text: str
    frame_index: int

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise ValueError("instructor comment text must be non-empty")


_CATEGORY_CUES: tuple[tuple[CommentCategory, tuple[str, ...]], ...] = (
    (CommentCategory.TEACHING_STRATEGY, ("teaching strategy", "teaching:", "ask students", "strategy:")),
    (CommentCategory.STUDENT_CONTEXT, ("student context", "misconception", "students may", "students often")),
    (CommentCategory.LECTURE_FLOW, ("lecture flow", "transition", "timing", "spend about", "pace")),
    (CommentCategory.TEXTBOOK_INTEGRATION, ("textbook", "see chapter", "see section")),
    (CommentCategory.DISCUSSION_ACTIVITY, ("discussion", "activity", "group work", "case study")),
    (CommentCategory.CONCEPTUAL, ("conceptual", "key takeaway", "in simpler terms")),
)


def classify_comment(text: str) -> CommentCategory:
    """Keyword classification over the comment text; conceptual is the default."""
    lowered = text.lower()
    for category, cues in _CATEGORY_CUES:
        if any(cue in lowered for cue in cues):
            return category
    return CommentCategory.CONCEPTUAL


class ConstraintViolation(Exception):
    def __init__(self, rule: str, frame_index: Optional[int] = None, detail: str = "") -> None:
        self.rule = rule
        self.frame_index = frame_index
        where = f" (frame {frame_index})" if frame_index is not None else ""
        super().__init__(f"enhancement violates {rule}{where}: {detail}")


@dataclass(frozen=True)
class EnhancementViolation:
    rule: str
    frame_index: Optional[int]
    detail: str


_COMMENT_CALL_RE = re.compile(r"\\pdfcomment\s*(\[[^\]]*\])?\s*\{")


def _strip_insertions(text: str) -> str:
    """Remove macro calls and pdfcomment annotations so bullet text can be
    compared before/after enhancement."""
    from ..latex import read_group, skip_ws

    from .macros import MacroKind

    out = text
    while True:
        m = _COMMENT_CALL_RE.search(out)
        if not m:
            break
        try:
            _, end = read_group(out, m.end() - 1)
        except Exception:
            break
        out = out[: m.start()] + out[end:]
    for kind in MacroKind:
        pattern = re.compile(r"\\" + kind.latex_name + r"(?![A-Za-z])")
        while True:
            m = pattern.search(out)
            if not m:
                break
            pos = m.end()
            for _ in range(kind.arity):
                pos = skip_ws(out, pos)
                if pos < len(out) and out[pos] == "{":
                    try:
                        _, pos = read_group(out, pos)
                    except Exception:
                        break
                else:
                    break
            out = out[: m.start()] + out[pos:]
    return out


def _norm_text(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip()


def _frame_signature(frame: Frame, source: BeamerSource) -> tuple:
    bullets = tuple(_norm_text(_strip_insertions(b.text)) for b in frame.bullets)
    cites = tuple(sorted(key for b in frame.bullets for key in b.cite_keys))
    return (_norm_text(frame.title), bullets, cites)


def _normalized_preamble(preamble: str) -> str:
    from ..codegen.generate import MACRO_LIBRARY_BEGIN, MACRO_LIBRARY_END

    pattern = re.compile(
        re.escape(MACRO_LIBRARY_BEGIN) + r".*?" + re.escape(MACRO_LIBRARY_END),
        re.DOTALL,
    )
    return _norm_text(pattern.sub("", preamble))


def validate_enhancements(before: BeamerSource, after: BeamerSource) -> list[EnhancementViolation]:
    """Additive-only structural diff.

    Clean when frame titles, bullet texts, citations, and bibliography are
    unchanged and the preamble differs at most by the macro library block.
    """
    violations: list[EnhancementViolation] = []
    if len(before.frames) != len(after.frames):
        violations.append(
            EnhancementViolation(
                "frame_count",
                None,
                f"{len(before.frames)} frames before, {len(after.frames)} after",
            )
        )
        return violations
    if _normalized_preamble(before.parsed.preamble) != _normalized_preamble(after.parsed.preamble):
        violations.append(EnhancementViolation("preamble", None, "preamble was altered"))
    for b_frame, a_frame in zip(before.frames, after.frames):
        b_sig = _frame_signature(b_frame, before)
        a_sig = _frame_signature(a_frame, after)
        if b_sig[0] != a_sig[0]:
            violations.append(
                EnhancementViolation(
                    "frame_title", b_frame.index, f"{b_sig[0]!r} became {a_sig[0]!r}"
                )
            )
        if b_sig[1] != a_sig[1]:
            violations.append(
                EnhancementViolation(
                    "bullet_text",
                    b_frame.index,
                    f"bullets changed: {list(b_sig[1])} -> {list(a_sig[1])}",
                )
            )
        if b_sig[2] != a_sig[2]:
            violations.append(
                EnhancementViolation(
                    "citations", b_frame.index, f"{list(b_sig[2])} -> {list(a_sig[2])}"
                )
            )
    b_bib = [(e.key, _norm_text(e.text)) for e in before.bibliography]
    a_bib = [(e.key, _norm_text(e.text)) for e in after.bibliography]
    if b_bib != a_bib:
        violations.append(EnhancementViolation("bibliography", None, "bibliography changed"))
    return violations


def check_figure_rules(source: BeamerSource) -> list[EnhancementViolation]:
    """Per-frame macro cardinality and placement rules."""
    violations = []
    for frame in source.frames:
        figures = [c for c in frame.macro_calls if c.kind in FIGURE_KINDS]
        inlines = [c for c in frame.macro_calls if c.kind in INLINE_KINDS]
        if len(figures) > 1:
            violations.append(
                EnhancementViolation(
                    "figure_cardinality", frame.index, f"{len(figures)} figure macros on one frame"
                )
            )
        if len(inlines) > 1:
            violations.append(
                EnhancementViolation(
                    "inline_cardinality", frame.index, f"{len(inlines)} inline macros on one frame"
                )
            )
        if figures and inlines:
            violations.append(
                EnhancementViolation(
                    "figure_and_inline", frame.index, "frame has both a figure and an inline macro"
                )
            )
        last_item_end = max((b.end for b in frame.bullets), default=frame.body_span[0])
        last_itemize_end = max((end for _, end in frame.itemize_spans), default=last_item_end)
        for call in figures:
            if call.start < last_itemize_end:
                violations.append(
                    EnhancementViolation(
                        "figure_placement",
                        frame.index,
                        "figure macro must come after the last bullet block",
                    )
                )
    return violations


def check_comment_rules(before: BeamerSource, after: BeamerSource) -> list[EnhancementViolation]:
    """Comments must sit inside an itemize region and precede figure macros."""
    violations = []
    for frame in after.frames:
        figure_starts = [c.start for c in frame.macro_calls if c.kind in FIGURE_KINDS]
        first_figure = min(figure_starts) if figure_starts else None
        for comment in frame.comments:
            inside = any(start <= comment.start < end for start, end in frame.itemize_spans)
            if not inside:
                violations.append(
                    EnhancementViolation(
                        "comment_outside_itemize",
                        frame.index,
                        f"comment {comment.text[:40]!r} is outside every itemize block",
                    )
                )
            if first_figure is not None and comment.start > first_figure:
                violations.append(
                    EnhancementViolation(
                        "comment_after_figure",
                        frame.index,
                        f"comment {comment.text[:40]!r} appears after a figure macro",
                    )
                )
    return violations


def extract_comments(source: BeamerSource) -> list[InstructorComment]:
    comments = []
    for frame in source.frames:
        for site in frame.comments:
            comments.append(
                InstructorComment(
                    category=classify_comment(site.text),
                    text=site.text,
                    frame_index=frame.index,
                )
            )
    return comments


def _enhance(
    gateway: LlmGateway,
    template_id: str,
    source: BeamerSource,
    context: SourceSelection,
    topic: str,
    extra_instructions: str = "",
) -> BeamerSource:
    template = load_template(template_id)
    prompt = render_template(
        template,
        {
            "slidecode": source.raw,
            "context": format_context(context.ranked),
            "topic": topic,
        },
    )
    if extra_instructions:
        prompt += f"\nRevision instructions from the instructor:\n{extra_instructions}\n"
    completion = gateway.complete(template.role, prompt)
    raw = strip_fences(require_complete(completion, f"{template_id} enhancement")).strip() + "\n"
    return parse_beamer(raw)


def _first(violations: list[EnhancementViolation]) -> ConstraintViolation:
    v = violations[0]
    return ConstraintViolation(v.rule, v.frame_index, v.detail)


def insert_figures(
    gateway: LlmGateway,
    source: BeamerSource,
    context: SourceSelection,
    topic: str,
    extra_instructions: str = "",
) -> BeamerSource:
    """Ask the model for figure insertions, then enforce the additive contract.

    Raises ConstraintViolation on any rule breach; callers keep the original
    deck in that case.
    """
    candidate = _enhance(gateway, "figures", source, context, topic, extra_instructions)
    violations = validate_enhancements(source, candidate) + check_figure_rules(candidate)
    if violations:
        raise _first(violations)
    return candidate


def insert_comments(
    gateway: LlmGateway,
    source: BeamerSource,
    context: SourceSelection,
    topic: str,
    extra_instructions: str = "",
) -> BeamerSource:
    """Ask the model for instructor comments; placement rules are enforced
    against the final macro positions, so run this after insert_figures."""
    candidate = _enhance(gateway, "comments", source, context, topic, extra_instructions)
    violations = (
        validate_enhancements(source, candidate)
        + check_figure_rules(candidate)
        + check_comment_rules(source, candidate)
    )
    if violations:
        raise _first(violations)
    for comment in extract_comments(candidate):
        logger.debug("comment on frame %d classified %s", comment.frame_index, comment.category.value)
    return candidate
