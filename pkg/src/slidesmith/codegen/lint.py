"""Structural and citation lint for generated decks.

Unresolved cite keys and empty frames are error-level and block finalization;
bullet-count and the fact-needs-citation heuristic are advisory.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..latex import find_env_spans, is_escaped
from ..planning import Archetype, classify_slide
from .beamer import BeamerSource, Frame, is_title_frame

BULLET_MIN = 3
BULLET_MAX = 5

# Frames outside the bullet-count contract: title, roadmap, references.
_EXEMPT_ARCHETYPES = {Archetype.TITLE, Archetype.ROADMAP, Archetype.REFERENCES}


class LintRule(Enum):
    BULLET_COUNT = "bullet_count"
    MISSING_CITE = "missing_cite"
    UNRESOLVED_CITE_KEY = "unresolved_cite_key"
    UNESCAPED_SPECIAL = "unescaped_special"
    EMPTY_FRAME = "empty_frame"


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


_RULE_SEVERITY = {
    LintRule.BULLET_COUNT: Severity.WARNING,
    LintRule.MISSING_CITE: Severity.WARNING,
    LintRule.UNRESOLVED_CITE_KEY: Severity.ERROR,
    LintRule.UNESCAPED_SPECIAL: Severity.WARNING,
    LintRule.EMPTY_FRAME: Severity.ERROR,
}


@dataclass(frozen=True)
class LintFinding:
    rule: LintRule
    frame_index: Optional[int]  # None locates the bibliography
    detail: str

    @property
    def severity(self) -> Severity:
        return _RULE_SEVERITY[self.rule]


def is_content_frame(frame: Frame, source: BeamerSource) -> bool:
    if is_title_frame(frame, source):
        return False
    body = source.raw[frame.body_span[0] : frame.body_span[1]]
    if "\\tableofcontents" in body or "thebibliography" in body:
        return False
    return classify_slide(frame.title) not in _EXEMPT_ARCHETYPES


# Digits or a capitalized token after the first word suggest a checkable fact.
_FACT_RE = re.compile(r"\d|(?<=[a-z)] )[A-Z][a-z]{2,}")


def _math_spans(text: str) -> list[tuple[int, int]]:
    spans = []
    for pattern in (r"\$(?:[^$\\]|\\.)*\$", r"\\\[.*?\\\]", r"\\\(.*?\\\)"):
        for m in re.finditer(pattern, text, re.DOTALL):
            spans.append((m.start(), m.end()))
    for env in ("verbatim", "equation", "align"):
        for span in find_env_spans(text, env):
            spans.append((span.start, span.end))
    return spans


def _unescaped_specials(text: str) -> list[tuple[int, str]]:
    protected = _math_spans(text)
    hits = []
    for i, ch in enumerate(text):
        if ch not in "%&_":
            continue
        if is_escaped(text, i):
            continue
        if any(start <= i < end for start, end in protected):
            continue
        hits.append((i, ch))
    return hits


def lint(source: BeamerSource) -> list[LintFinding]:
    findings: list[LintFinding] = []
    bib_keys = {entry.key for entry in source.bibliography}

    for frame in source.frames:
        body = source.raw[frame.body_span[0] : frame.body_span[1]]
        has_structure = bool(
            frame.bullets
            or frame.macro_calls
            or "\\titlepage" in body
            or "\\maketitle" in body
            or "\\tableofcontents" in body
            or "thebibliography" in body
        )
        prose = re.sub(r"\\frametitle\s*\{[^}]*\}", "", body)
        prose = re.sub(r"^\s*\{[^}]*\}", "", prose)  # title group after \begin{frame}
        if not has_structure and not prose.strip():
            findings.append(
                LintFinding(LintRule.EMPTY_FRAME, frame.index, f"frame {frame.index} has no content")
            )
            continue

        if is_content_frame(frame, source):
            n = len(frame.bullets)
            if not BULLET_MIN <= n <= BULLET_MAX:
                findings.append(
                    LintFinding(
                        LintRule.BULLET_COUNT,
                        frame.index,
                        f"frame {frame.index} ({frame.title!r}) has {n} bullets; expected "
                        f"{BULLET_MIN}-{BULLET_MAX}",
                    )
                )
            for bullet in frame.bullets:
                if not bullet.cite_keys and _FACT_RE.search(bullet.text):
                    findings.append(
                        LintFinding(
                            LintRule.MISSING_CITE,
                            frame.index,
                            f"bullet looks factual but carries no citation: "
                            f"{bullet.text[:60]!r}",
                        )
                    )

        for bullet in frame.bullets:
            for key in bullet.cite_keys:
                if key not in bib_keys:
                    findings.append(
                        LintFinding(
                            LintRule.UNRESOLVED_CITE_KEY,
                            frame.index,
                            f"cite key {key!r} has no bibliography entry",
                        )
                    )

        for pos, ch in _unescaped_specials(body):
            findings.append(
                LintFinding(
                    LintRule.UNESCAPED_SPECIAL,
                    frame.index,
                    f"unescaped {ch!r} in frame {frame.index}",
                )
            )
    return findings


def error_findings(findings: list[LintFinding]) -> list[LintFinding]:
    return [f for f in findings if f.severity is Severity.ERROR]
