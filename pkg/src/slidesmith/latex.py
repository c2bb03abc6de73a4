"""Low-level LaTeX text helpers: comment stripping, brace groups, environments.

These operate on raw source text and report byte offsets so callers can do
lossless span tracking. None of them attempt full TeX tokenization; they
cover the dialect the pipeline emits.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


def is_escaped(text: str, pos: int) -> bool:
    """True if the character at pos is preceded by an odd number of backslashes."""
    count = 0
    i = pos - 1
    while i >= 0 and text[i] == "\\":
        count += 1
        i -= 1
    return count % 2 == 1


def strip_comments(text: str) -> str:
    """Blank out unescaped ``%`` through end of line, preserving offsets.

    Replacing with spaces (not deleting) keeps every surviving character at
    its original position, so spans computed on the stripped text index into
    the raw text unchanged.
    """
    chars = list(text)
    i = 0
    n = len(chars)
    while i < n:
        if chars[i] == "%" and not is_escaped(text, i):
            while i < n and chars[i] != "\n":
                chars[i] = " "
                i += 1
        else:
            i += 1
    return "".join(chars)


class GroupError(Exception):
    def __init__(self, message: str, pos: int) -> None:
        self.pos = pos
        super().__init__(f"{message} (offset {pos})")


def read_group(text: str, pos: int) -> tuple[str, int]:
    """Read a balanced ``{...}`` group whose opening brace is at pos.

    Returns (content, end) where end is the offset just past the closing
    brace. Escaped braces do not affect nesting.
    """
    if pos >= len(text) or text[pos] != "{":
        raise GroupError("expected '{'", pos)
    depth = 0
    i = pos
    while i < len(text):
        ch = text[i]
        if ch == "{" and not is_escaped(text, i):
            depth += 1
        elif ch == "}" and not is_escaped(text, i):
            depth -= 1
            if depth == 0:
                return text[pos + 1 : i], i + 1
        i += 1
    raise GroupError("unterminated group", pos)


def skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos] in " \t\n\r":
        pos += 1
    return pos


@dataclass(frozen=True)
class MacroUse:
    name: str
    args: tuple[str, ...]
    start: int
    end: int


def find_macro_calls(text: str, name: str, arity: int) -> list[MacroUse]:
    """All uses of ``\\name{a}{b}...`` with exactly arity brace arguments."""
    calls: list[MacroUse] = []
    pattern = re.compile(r"\\" + re.escape(name) + r"(?![A-Za-z])")
    for match in pattern.finditer(text):
        if is_escaped(text, match.start()):
            continue
        pos = match.end()
        args: list[str] = []
        ok = True
        for _ in range(arity):
            pos = skip_ws(text, pos)
            if pos >= len(text) or text[pos] != "{":
                ok = False
                break
            try:
                arg, pos = read_group(text, pos)
            except GroupError:
                ok = False
                break
            args.append(arg)
        if ok:
            calls.append(MacroUse(name=name, args=tuple(args), start=match.start(), end=pos))
    return calls


@dataclass(frozen=True)
class EnvSpan:
    name: str
    start: int       # offset of the backslash in \begin
    end: int         # offset just past \end{name}
    body_start: int  # offset just past \begin{name}[opts]
    body_end: int    # offset of the backslash in \end


def find_env_spans(text: str, env: str) -> list[EnvSpan]:
    """Nesting-aware spans of ``\\begin{env}...\\end{env}`` regions."""
    begin_re = re.compile(r"\\begin\s*\{" + re.escape(env) + r"\}(\[[^\]]*\])?")
    end_re = re.compile(r"\\end\s*\{" + re.escape(env) + r"\}")
    events: list[tuple[int, int, str]] = []
    for m in begin_re.finditer(text):
        events.append((m.start(), m.end(), "begin"))
    for m in end_re.finditer(text):
        events.append((m.start(), m.end(), "end"))
    events.sort()
    spans: list[EnvSpan] = []
    stack: list[tuple[int, int]] = []
    for start, end, kind in events:
        if kind == "begin":
            stack.append((start, end))
        else:
            if not stack:
                continue  # orphan \end; structural checks report it elsewhere
            b_start, b_end = stack.pop()
            if not stack:  # record outermost spans only
                spans.append(
                    EnvSpan(name=env, start=b_start, end=end, body_start=b_end, body_end=start)
                )
    spans.sort(key=lambda s: s.start)
    return spans


_NEWCOMMAND_RE = re.compile(r"\\(?:re)?newcommand\*?\s*")


def parse_newcommands(text: str) -> dict[str, tuple[int, str]]:
    """Parse ``\\newcommand{\\name}[n]{body}`` definitions into {name: (n, body)}.

    Later definitions win, mirroring ``\\renewcommand``. Definitions with an
    optional-argument default are not supported and are skipped.
    """
    defs: dict[str, tuple[int, str]] = {}
    for match in _NEWCOMMAND_RE.finditer(text):
        pos = skip_ws(text, match.end())
        if pos < len(text) and text[pos] == "{":
            try:
                inner, pos = read_group(text, pos)
            except GroupError:
                continue
            name = inner.strip().lstrip("\\")
        elif pos < len(text) and text[pos] == "\\":
            m = re.match(r"\\([A-Za-z@]+)", text[pos:])
            if not m:
                continue
            name = m.group(1)
            pos += m.end()
        else:
            continue
        pos = skip_ws(text, pos)
        arity = 0
        if pos < len(text) and text[pos] == "[":
            close = text.find("]", pos)
            if close == -1:
                continue
            try:
                arity = int(text[pos + 1 : close].strip())
            except ValueError:
                continue
            pos = skip_ws(text, close + 1)
            if pos < len(text) and text[pos] == "[":  # optional-default form
                continue
        if pos >= len(text) or text[pos] != "{":
            continue
        try:
            body, pos = read_group(text, pos)
        except GroupError:
            continue
        defs[name] = (arity, body)
    return defs


def substitute_params(body: str, args: list[str] | tuple[str, ...]) -> str:
    """Replace ``#1``..``#9`` in a macro body with the given arguments."""
    out: list[str] = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "#" and i + 1 < len(body) and body[i + 1].isdigit():
            idx = int(body[i + 1])
            out.append(args[idx - 1] if 0 < idx <= len(args) else "")
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def line_of(text: str, pos: int) -> int:
    """1-based line number of offset pos."""
    return text.count("\n", 0, min(pos, len(text))) + 1
