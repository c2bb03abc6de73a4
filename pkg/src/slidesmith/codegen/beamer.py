"""Structured view over Beamer LaTeX source.

Parsing is span-based and lossless: every frame records the byte range it
occupies in the raw text, and reassembling the ranges reproduces the raw
source exactly. The parser is deliberately tolerant of brace-level breakage
inside frame bodies (the compiler owns that diagnosis); it only rejects
documents whose frame structure cannot be recovered.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from ..enhancer.macros import MacroKind, kind_for_name
from ..latex import EnvSpan, find_env_spans, is_escaped, read_group, skip_ws, strip_comments

CITE_KEY_RE = re.compile(r"^[^\s{},%\\]+$")
_CITE_RE = re.compile(r"\\cite(?:\[[^\]]*\])?\s*\{([^}]*)\}")
_ITEM_RE = re.compile(r"\\item(?![A-Za-z])")
_FRAMETITLE_RE = re.compile(r"\\frametitle\s*")
_PDFCOMMENT_RE = re.compile(r"\\pdfcomment\s*(\[[^\]]*\])?\s*")


class CodegenError(Exception):
    pass


class NotLatex(CodegenError):
    pass


class BeamerParseError(CodegenError):
    pass


@dataclass(frozen=True)
class Bullet:
    text: str
    cite_keys: tuple[str, ...]
    start: int
    end: int


@dataclass(frozen=True)
class MacroCallSite:
    kind: MacroKind
    args: tuple[str, ...]
    start: int
    end: int


@dataclass(frozen=True)
class CommentSite:
    text: str
    start: int
    end: int


@dataclass(frozen=True)
class Frame:
    index: int
    title: str
    bullets: tuple[Bullet, ...]
    macro_calls: tuple[MacroCallSite, ...]
    comments: tuple[CommentSite, ...]
    span: tuple[int, int]
    body_span: tuple[int, int]
    itemize_spans: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class BibEntry:
    key: str
    text: str


@dataclass(frozen=True)
class ParsedDeck:
    preamble: str
    frames: tuple[Frame, ...]
    bibliography: tuple[BibEntry, ...]


@dataclass(frozen=True)
class BeamerSource:
    raw: str
    parsed: ParsedDeck

    @property
    def frames(self) -> tuple[Frame, ...]:
        return self.parsed.frames

    @property
    def bibliography(self) -> tuple[BibEntry, ...]:
        return self.parsed.bibliography


_FENCE_RE = re.compile(r"^\s*```[a-zA-Z]*\s*\n(.*)\n\s*```\s*$", re.DOTALL)


def strip_fences(text: str) -> str:
    """Remove a single wrapping markdown code fence, if present."""
    match = _FENCE_RE.match(text)
    if match:
        return match.group(1)
    return text


def _frame_title(body: str, base: int, stripped: str, begin_end: int) -> str:
    match = _FRAMETITLE_RE.search(body)
    if match:
        pos = base + match.end()
        pos = skip_ws(stripped, pos)
        if pos < len(stripped) and stripped[pos] == "{":
            title, _ = read_group(stripped, pos)
            return title.strip()
    # title as a group right after \begin{frame}[opts]
    pos = skip_ws(stripped, begin_end)
    if pos < len(stripped) and stripped[pos] == "{":
        try:
            title, _ = read_group(stripped, pos)
            return title.strip()
        except Exception:
            return ""
    return ""


def _find_items(body: str, base: int, nested: list[EnvSpan]) -> list[tuple[int, int]]:
    """(start, end) of top-level \\item texts inside one itemize body."""
    positions = [
        m.start()
        for m in _ITEM_RE.finditer(body)
        if not is_escaped(body, m.start())
        and not any(n.start - base <= m.start() < n.end - base for n in nested)
    ]
    items = []
    for i, pos in enumerate(positions):
        end = positions[i + 1] if i + 1 < len(positions) else len(body)
        items.append((base + pos, base + end))
    return items


def _cite_keys(text: str) -> tuple[str, ...]:
    keys: list[str] = []
    for match in _CITE_RE.finditer(text):
        for key in match.group(1).split(","):
            key = key.strip()
            if not key:
                continue
            if not CITE_KEY_RE.match(key):
                raise BeamerParseError(f"malformed cite key: {key!r}")
            keys.append(key)
    return tuple(keys)


def _macro_sites(stripped: str, start: int, end: int) -> list[MacroCallSite]:
    sites = []
    region = stripped[start:end]
    for kind in MacroKind:
        pattern = re.compile(r"\\" + kind.latex_name + r"(?![A-Za-z])")
        for match in pattern.finditer(region):
            pos = match.start() + start
            if is_escaped(stripped, pos):
                continue
            cursor = match.end() + start
            args = []
            ok = True
            for _ in range(kind.arity):
                cursor = skip_ws(stripped, cursor)
                if cursor >= len(stripped) or stripped[cursor] != "{":
                    ok = False
                    break
                try:
                    arg, cursor = read_group(stripped, cursor)
                except Exception:
                    ok = False
                    break
                args.append(arg)
            if ok:
                sites.append(MacroCallSite(kind=kind, args=tuple(args), start=pos, end=cursor))
    sites.sort(key=lambda s: s.start)
    return sites


def _comment_sites(stripped: str, start: int, end: int) -> list[CommentSite]:
    sites = []
    for match in _PDFCOMMENT_RE.finditer(stripped, start, end):
        pos = skip_ws(stripped, match.end())
        if pos < len(stripped) and stripped[pos] == "{":
            try:
                text, close = read_group(stripped, pos)
            except Exception:
                continue
            sites.append(CommentSite(text=text.strip(), start=match.start(), end=close))
    return sites


def _bibliography(stripped: str) -> tuple[BibEntry, ...]:
    spans = find_env_spans(stripped, "thebibliography")
    if not spans:
        return ()
    body_start = spans[0].body_start
    body = stripped[body_start : spans[0].body_end]
    # skip the widest-label argument group of the environment
    pos = skip_ws(body, 0)
    if pos < len(body) and body[pos] == "{":
        try:
            _, pos = read_group(body, pos)
        except Exception:
            pass
    entries = []
    bib_re = re.compile(r"\\bibitem\s*\{([^}]*)\}")
    matches = list(bib_re.finditer(body, pos))
    for i, match in enumerate(matches):
        end = matches[i + 1].start() if i + 1 < len(matches) else len(body)
        key = match.group(1).strip()
        if not key or not CITE_KEY_RE.match(key):
            raise BeamerParseError(f"malformed bibliography key: {key!r}")
        text = re.sub(r"\s+", " ", body[match.end() : end]).strip()
        entries.append(BibEntry(key=key, text=text))
    return tuple(entries)


def parse_beamer(raw: str) -> BeamerSource:
    """Parse raw LaTeX into a frame-structured view.

    Raises NotLatex when the text is not a LaTeX document at all, and
    BeamerParseError when frame structure cannot be recovered.
    """
    if "\\documentclass" not in raw:
        raise NotLatex("no \\documentclass found")
    stripped = strip_comments(raw)
    begin_doc = stripped.find("\\begin{document}")
    preamble = raw[:begin_doc] if begin_doc != -1 else ""
    frame_spans = find_env_spans(stripped, "frame")
    n_begins = len(re.findall(r"\\begin\s*\{frame\}", stripped))
    if len(frame_spans) != n_begins:
        raise BeamerParseError(
            f"unbalanced frame environments: {n_begins} begins, {len(frame_spans)} closed"
        )
    if not frame_spans:
        raise BeamerParseError("document contains no frames")

    frames = []
    last_end = -1
    for index, span in enumerate(frame_spans, start=1):
        if span.start < last_end:
            raise BeamerParseError("overlapping frame spans")
        last_end = span.end
        body = stripped[span.body_start : span.body_end]
        title = _frame_title(body, span.body_start, stripped, span.body_start)
        itemizes = [
            env
            for env_name in ("itemize", "enumerate")
            for env in find_env_spans(body, env_name)
        ]
        itemizes.sort(key=lambda env: env.start)
        bullets = []
        for env in itemizes:
            env_body = body[env.body_start : env.body_end]
            nested = [
                n
                for env_name in ("itemize", "enumerate")
                for n in find_env_spans(env_body, env_name)
            ]
            nested_abs = [
                EnvSpan(
                    name=n.name,
                    start=n.start + env.body_start,
                    end=n.end + env.body_start,
                    body_start=n.body_start + env.body_start,
                    body_end=n.body_end + env.body_start,
                )
                for n in nested
            ]
            for item_start, item_end in _find_items(env_body, env.body_start, nested_abs):
                text = body[item_start:item_end]
                text = re.sub(r"^\\item(?:\[[^\]]*\])?", "", text).strip()
                abs_start = span.body_start + item_start
                abs_end = span.body_start + item_end
                bullets.append(
                    Bullet(
                        text=text,
                        cite_keys=_cite_keys(text),
                        start=abs_start,
                        end=abs_end,
                    )
                )
        frames.append(
            Frame(
                index=index,
                title=title,
                bullets=tuple(bullets),
                macro_calls=tuple(_macro_sites(stripped, span.body_start, span.body_end)),
                comments=tuple(_comment_sites(stripped, span.body_start, span.body_end)),
                span=(span.start, span.end),
                body_span=(span.body_start, span.body_end),
                itemize_spans=tuple(
                    (span.body_start + env.start, span.body_start + env.end) for env in itemizes
                ),
            )
        )
    return BeamerSource(
        raw=raw,
        parsed=ParsedDeck(
            preamble=preamble,
            frames=tuple(frames),
            bibliography=_bibliography(stripped),
        ),
    )


def reassemble(source: BeamerSource) -> str:
    """Rebuild the raw text from tracked spans; must match raw byte-for-byte."""
    raw = source.raw
    pieces = []
    cursor = 0
    for frame in source.parsed.frames:
        start, end = frame.span
        pieces.append(raw[cursor:start])
        pieces.append(raw[start:end])
        cursor = end
    pieces.append(raw[cursor:])
    return "".join(pieces)


def frame_text(source: BeamerSource, frame: Frame) -> str:
    return source.raw[frame.span[0] : frame.span[1]]


def is_title_frame(frame: Frame, source: BeamerSource) -> bool:
    body = source.raw[frame.body_span[0] : frame.body_span[1]]
    return "\\titlepage" in body or "\\maketitle" in body or frame.title.lower() == "title"


def splice(source: BeamerSource, insertions: list[tuple[int, str]]) -> BeamerSource:
    """Insert text at absolute offsets and re-parse; offsets refer to raw."""
    raw = source.raw
    result = []
    cursor = 0
    for offset, text in sorted(insertions, key=lambda item: item[0]):
        result.append(raw[cursor:offset])
        result.append(text)
        cursor = offset
    result.append(raw[cursor:])
    return parse_beamer("".join(result))
