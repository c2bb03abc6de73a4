"""Subset LaTeX/Beamer engine: parse, diagnose, and model a deck for rendering.

This is the fallback compile backend for machines without a TeX installation.
It understands the dialect the pipeline emits: a beamer document with frames,
itemize bullets, citations, the bundled figure-macro library, pdfcomment
annotations, and an inline thebibliography. Drawing environments (tikz,
pgfplots axes, algorithm2e) are treated as opaque boxes.

Diagnostics mirror TeX log conventions (``! <message>`` then ``l.<line>``)
and compilation halts on the first error, like ``pdflatex -halt-on-error``.
Frame bodies are checked for undefined control sequences, environment
mismatches, and runaway command arguments; preamble definitions are trusted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from ..latex import (
    line_of,
    parse_newcommands,
    read_group,
    skip_ws,
    strip_comments,
    substitute_params,
)

MAX_EXPANSIONS = 500


@dataclass(frozen=True)
class TexError:
    message: str
    line: Optional[int]
    context: str = ""


class TexHalt(Exception):
    def __init__(self, error: TexError) -> None:
        self.error = error
        super().__init__(error.message)


# ---------------------------------------------------------------- block model


@dataclass
class Block:
    kind: str  # bullet | plain | heading | formula | code | picture | note | titlepage | toc | bib
    text: str = ""
    depth: int = 0
    entries: tuple[str, ...] = ()


@dataclass
class RenderFrame:
    title: str
    blocks: list[Block] = field(default_factory=list)


@dataclass
class DeckModel:
    title: str = ""
    author: str = ""
    date: str = ""
    institute: str = ""
    sections: list[str] = field(default_factory=list)
    frames: list[RenderFrame] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


# ------------------------------------------------------------- command tables

OPAQUE_ENVS = {
    "tikzpicture",
    "axis",
    "algorithm",
    "algorithmic",
    "verbatim",
    "lstlisting",
    "semiverbatim",
    "tabular",
    "table",
    "figure",
    "equation",
    "align",
    "math",
    "displaymath",
}

_CODE_ENVS = {"algorithm", "algorithmic", "verbatim", "lstlisting", "semiverbatim"}
_FORMULA_ENVS = {"equation", "align", "math", "displaymath"}

TRANSPARENT_ENVS = {
    "itemize",
    "enumerate",
    "description",
    "center",
    "flushleft",
    "flushright",
    "columns",
    "column",
    "block",
    "alertblock",
    "exampleblock",
    "minipage",
    "quote",
    "small",
}

# commands that read N brace groups which are discarded unscanned
CONSUME_ARGS: dict[str, int] = {
    "vspace": 1,
    "hspace": 1,
    "includegraphics": 1,
    "usetikzlibrary": 1,
    "pgfplotsset": 1,
    "setbeamertemplate": 1,
    "setbeamercovered": 1,
    "usetheme": 1,
    "usecolortheme": 1,
    "usefonttheme": 1,
    "label": 1,
    "hypersetup": 1,
    "graphicspath": 1,
}

# commands whose single brace argument is styled text: the group is left to
# the main scanner so its content renders
STYLED_TEXT = {
    "textbf",
    "textit",
    "textsc",
    "texttt",
    "textrm",
    "textsf",
    "emph",
    "underline",
    "alert",
    "mbox",
    "text",
    "structure",
}

NOOP_COMMANDS = {
    "par",
    "noindent",
    "centering",
    "raggedright",
    "raggedleft",
    "vfill",
    "hfill",
    "quad",
    "qquad",
    "smallskip",
    "medskip",
    "bigskip",
    "tiny",
    "scriptsize",
    "footnotesize",
    "small",
    "normalsize",
    "large",
    "Large",
    "LARGE",
    "huge",
    "Huge",
    "itshape",
    "bfseries",
    "ttfamily",
    "linewidth",
    "textwidth",
    "textheight",
    "paperwidth",
    "columnwidth",
    "and",
    "newblock",
    "ldots",
    "dots",
    "pause",
    "onslide",
    "strut",
    "textbackslash",
    "newline",
    "indent",
    "frontmatter",
    "displaystyle",
}

LITERAL_COMMANDS = {
    "%": "%",
    "&": "&",
    "_": "_",
    "#": "#",
    "$": "$",
    "{": "{",
    "}": "}",
    ",": " ",
    ";": " ",
    " ": " ",
    "~": "~",
}

_NAME_RE = re.compile(r"[A-Za-z]+")
_BEGIN_DOC_RE = re.compile(r"\\begin\s*\{document\}")
_END_DOC_RE = re.compile(r"\\end\s*\{document\}")
_FRAME_BEGIN_RE = re.compile(r"\\begin\s*\{frame\}")
_FRAME_END_RE = re.compile(r"\\end\s*\{frame\}")
_NEWIF_RE = re.compile(r"\\newif\s*\\if([A-Za-z]+)")
_SECTION_RE = re.compile(r"\\(?:sub)?section\*?\s*\{")


def _clean_inline(text: str) -> str:
    """Crude de-TeXing for places rendered as plain text (titles, bib entries)."""
    out = re.sub(r"\\cite(?:\[[^\]]*\])?\s*\{([^}]*)\}", r"[\1]", text)
    out = re.sub(r"\\[A-Za-z]+\s*", "", out)
    out = out.replace("{", "").replace("}", "").replace("~", " ")
    return re.sub(r"\s+", " ", out).strip()


@dataclass
class _Origin:
    """Maps positions of working text back to source lines after expansion."""

    lines: list[int]

    @classmethod
    def for_text(cls, text: str, source: str, offset: int) -> "_Origin":
        lines = []
        line = line_of(source, offset)
        for ch in text:
            lines.append(line)
            if ch == "\n":
                line += 1
        lines.append(line)  # sentinel for end-of-text positions
        return cls(lines)

    def line_at(self, pos: int) -> int:
        return self.lines[min(pos, len(self.lines) - 1)]

    def splice(self, start: int, end: int, length: int) -> None:
        call_line = self.lines[start]
        self.lines[start:end] = [call_line] * length


class Engine:
    def __init__(self, raw: str) -> None:
        self.raw = raw
        self.stripped = strip_comments(raw)
        self.macros: dict[str, tuple[int, str]] = {}
        self.flags: dict[str, bool] = {}
        self.model = DeckModel()
        self.source_lines = raw.splitlines()

    # ------------------------------------------------------------ entry point

    def run(self) -> DeckModel:
        if "\\documentclass" not in self.stripped:
            raise TexHalt(TexError("LaTeX Error: Missing \\documentclass.", 1))
        doc_match = _BEGIN_DOC_RE.search(self.stripped)
        if doc_match is None:
            raise TexHalt(TexError("LaTeX Error: Missing \\begin{document}.", 1))
        self._read_preamble(self.stripped[: doc_match.start()])
        end_match = _END_DOC_RE.search(self.stripped)
        if end_match is None:
            raise TexHalt(
                TexError(
                    "Emergency stop. File ended while scanning the document body.",
                    line_of(self.stripped, len(self.stripped) - 1),
                )
            )
        self._read_body(doc_match.end(), end_match.start())
        return self.model

    # -------------------------------------------------------------- preamble

    def _read_preamble(self, preamble: str) -> None:
        self.macros = parse_newcommands(preamble)
        self.macros.pop("pdfcomment", None)  # built-in keeps toggle semantics
        for match in _NEWIF_RE.finditer(preamble):
            name = match.group(1)
            self.flags[name] = False
            if re.search(r"\\" + name + r"true(?![A-Za-z])", preamble):
                self.flags[name] = True
            # a later ...false wins over ...true when both appear
            true_pos = [m.start() for m in re.finditer(r"\\" + name + r"true(?![A-Za-z])", preamble)]
            false_pos = [m.start() for m in re.finditer(r"\\" + name + r"false(?![A-Za-z])", preamble)]
            last_true = max(true_pos) if true_pos else -1
            last_false = max(false_pos) if false_pos else -1
            self.flags[name] = last_true > last_false
        for field_name in ("title", "author", "date", "institute"):
            match = re.search(r"\\" + field_name + r"\s*(\[[^\]]*\])?\s*\{", preamble)
            if match:
                try:
                    value, _ = read_group(preamble, match.end() - 1)
                    setattr(self.model, field_name, _clean_inline(value))
                except Exception:
                    pass

    # ------------------------------------------------------------------ body

    def _read_body(self, start: int, end: int) -> None:
        body = self.stripped
        pos = start
        while True:
            begin = _FRAME_BEGIN_RE.search(body, pos, end)
            if begin is None:
                self._scan_between_frames(body[pos:end], pos)
                break
            self._scan_between_frames(body[pos : begin.start()], pos)
            frame_end = _FRAME_END_RE.search(body, begin.end(), end)
            next_begin = _FRAME_BEGIN_RE.search(body, begin.end(), end)
            begin_line = line_of(body, begin.start())
            if frame_end is None or (next_begin is not None and next_begin.start() < frame_end.start()):
                ended_by = "\\begin{frame}" if next_begin is not None and (
                    frame_end is None or next_begin.start() < frame_end.start()
                ) else "\\end{document}"
                at = next_begin.start() if ended_by == "\\begin{frame}" and next_begin else end
                raise TexHalt(
                    TexError(
                        f"LaTeX Error: \\begin{{frame}} on input line {begin_line} ended by {ended_by}.",
                        line_of(body, at),
                        self._source_line(line_of(body, at)),
                    )
                )
            self._scan_frame(begin.end(), frame_end.start())
            pos = frame_end.end()

    def _scan_between_frames(self, text: str, offset: int) -> None:
        for match in _SECTION_RE.finditer(text):
            try:
                name, _ = read_group(text, match.end() - 1)
                self.model.sections.append(_clean_inline(name))
            except Exception:
                continue

    def _source_line(self, line_no: Optional[int]) -> str:
        if line_no is None or not 1 <= line_no <= len(self.source_lines):
            return ""
        return self.source_lines[line_no - 1].strip()[:72]

    # ---------------------------------------------------------- frame scanner

    def _expand(self, text: str, origin: _Origin) -> tuple[str, _Origin]:
        """Textually expand user-defined macros, keeping line attribution."""
        expansions = 0
        changed = True
        while changed:
            changed = False
            for name in self.macros:
                pattern = re.compile(r"\\" + name + r"(?![A-Za-z])")
                match = pattern.search(text)
                if match is None:
                    continue
                arity, macro_body = self.macros[name]
                pos = match.end()
                args = []
                ok = True
                for _ in range(arity):
                    pos = skip_ws(text, pos)
                    if pos >= len(text) or text[pos] != "{":
                        ok = False
                        break
                    try:
                        arg, pos = read_group(text, pos)
                    except Exception:
                        raise TexHalt(
                            TexError(
                                f"File ended while scanning use of \\{name}.",
                                origin.line_at(match.start()),
                                self._source_line(origin.line_at(match.start())),
                            )
                        )
                    args.append(arg)
                if not ok:
                    raise TexHalt(
                        TexError(
                            f"Use of \\{name} doesn't match its definition.",
                            origin.line_at(match.start()),
                            self._source_line(origin.line_at(match.start())),
                        )
                    )
                replacement = substitute_params(macro_body, args)
                origin.splice(match.start(), pos, len(replacement))
                text = text[: match.start()] + replacement + text[pos:]
                expansions += 1
                if expansions > MAX_EXPANSIONS:
                    raise TexHalt(
                        TexError(
                            "TeX capacity exceeded, too many macro expansions.",
                            origin.line_at(match.start()),
                        )
                    )
                changed = True
                break
        return text, origin

    def _scan_frame(self, body_start: int, body_end: int) -> None:
        frame = RenderFrame(title="")
        text = self.stripped[body_start:body_end]
        origin = _Origin.for_text(text, self.stripped, body_start)
        text, origin = self._expand(text, origin)
        scanner = _FrameScanner(self, frame, text, origin)
        scanner.scan()
        self.model.frames.append(frame)


class _FrameScanner:
    """Single pass over one expanded frame body."""

    def __init__(self, engine: Engine, frame: RenderFrame, text: str, origin: _Origin) -> None:
        self.engine = engine
        self.frame = frame
        self.text = text
        self.origin = origin
        self.pos = 0
        self.sink: list[str] = []
        self.bullet_depth = 0
        self.in_bullet = False
        self.group_stack: list[tuple[int, Optional[str]]] = []  # (pos, owner command)
        self.env_stack: list[tuple[str, int]] = []  # (env, line)
        self.pending_owner: Optional[str] = None
        self.title_taken = False

    # -- helpers

    def _halt(self, message: str, pos: int) -> None:
        line = self.origin.line_at(pos)
        raise TexHalt(TexError(message, line, self.engine._source_line(line)))

    def _emit_text(self, value: str) -> None:
        self.sink.append(value)

    def _flush_text(self) -> None:
        value = re.sub(r"\s+", " ", "".join(self.sink)).strip()
        self.sink = []
        if not value:
            return
        if self.in_bullet:
            self.frame.blocks.append(Block("bullet", value, depth=self.bullet_depth))
        else:
            self.frame.blocks.append(Block("plain", value))

    def _read_optional(self) -> None:
        self.pos = skip_ws(self.text, self.pos)
        if self.pos < len(self.text) and self.text[self.pos] == "[":
            close = self.text.find("]", self.pos)
            self.pos = close + 1 if close != -1 else len(self.text)

    def _read_required(self, owner: str) -> str:
        self.pos = skip_ws(self.text, self.pos)
        if self.pos >= len(self.text) or self.text[self.pos] != "{":
            return ""
        try:
            content, self.pos = read_group(self.text, self.pos)
        except Exception:
            self._runaway(owner, self.pos)
        return content

    def _runaway(self, owner: str, pos: int) -> None:
        line = self.origin.line_at(pos)
        raise TexHalt(
            TexError(
                f"File ended while scanning use of \\{owner}.",
                line,
                self.engine._source_line(line),
            )
        )

    # -- main loop

    def scan(self) -> None:
        # leading title group from \begin{frame}[opts]{Title}
        self.pos = skip_ws(self.text, self.pos)
        if self.pos < len(self.text) and self.text[self.pos] == "[":
            self._read_optional()
            self.pos = skip_ws(self.text, self.pos)
        if self.pos < len(self.text) and self.text[self.pos] == "{":
            try:
                title, self.pos = read_group(self.text, self.pos)
                self.frame.title = _clean_inline(title)
                self.title_taken = True
            except Exception:
                pass

        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "\\":
                self._command()
            elif ch == "{":
                self.group_stack.append((self.pos, self.pending_owner))
                self.pending_owner = None
                self.pos += 1
            elif ch == "}":
                if not self.group_stack:
                    self._halt("Too many }'s.", self.pos)
                self.group_stack.pop()
                self.pos += 1
            elif ch == "$":
                self._math_dollar()
            elif ch == "~":
                self._emit_text(" ")
                self.pos += 1
            else:
                if not ch.isspace():
                    self.pending_owner = None
                self._emit_text(ch)
                self.pos += 1

        # end of frame: runaway command arguments are errors; bare groups warn
        for pos, owner in self.group_stack:
            if owner is not None:
                self._runaway(owner, pos)
        if self.group_stack:
            line = self.origin.line_at(self.group_stack[0][0])
            self.engine.model.warnings.append(
                f"unclosed group in frame {len(self.engine.model.frames) + 1} (line {line})"
            )
        if self.env_stack:
            env, line = self.env_stack[-1]
            raise TexHalt(
                TexError(
                    f"LaTeX Error: \\begin{{{env}}} on input line {line} ended by \\end{{frame}}.",
                    line,
                    self.engine._source_line(line),
                )
            )
        self._flush_text()

    # -- pieces

    def _math_dollar(self) -> None:
        start = self.pos
        i = self.pos + 1
        while i < len(self.text):
            if self.text[i] == "$" and self.text[i - 1] != "\\":
                self._emit_text(" " + self.text[start : i + 1] + " ")
                self.pos = i + 1
                return
            i += 1
        self._halt("Missing $ inserted.", start)

    def _display_math(self) -> None:
        close = self.text.find("\\]", self.pos)
        if close == -1:
            self._halt("Missing \\] inserted.", self.pos)
        content = self.text[self.pos + 2 : close].strip()
        self._flush_text()
        self.frame.blocks.append(Block("formula", content))
        self.pos = close + 2

    def _command(self) -> None:
        start = self.pos
        nxt = self.text[start + 1] if start + 1 < len(self.text) else ""
        if nxt == "\\":
            self._emit_text("\n")
            self.pos += 2
            return
        if nxt == "[":
            self._display_math()
            return
        if nxt in LITERAL_COMMANDS:
            self._emit_text(LITERAL_COMMANDS[nxt])
            self.pos += 2
            return
        match = _NAME_RE.match(self.text, start + 1)
        if match is None:
            self.pos += 1
            return
        name = match.group(0)
        self.pos = match.end()
        self._dispatch(name, start)

    def _dispatch(self, name: str, start: int) -> None:
        engine = self.engine
        if name == "begin":
            self._begin_env(start)
        elif name == "end":
            self._end_env(start)
        elif name == "item":
            self._flush_text()
            self._read_optional()
            if self.bullet_depth == 0:
                # \item outside itemize is tolerated as plain text marker
                self.in_bullet = False
            else:
                self.in_bullet = True
        elif name == "frametitle":
            title = self._read_required("frametitle")
            self.frame.title = _clean_inline(title) or self.frame.title
        elif name == "framesubtitle":
            self._read_required("framesubtitle")
        elif name in STYLED_TEXT:
            self.pending_owner = name
        elif name == "cite":
            self._read_optional()
            keys = self._read_required("cite")
            self._emit_text(" [" + keys + "]")
        elif name == "footnote":
            self._read_required("footnote")
        elif name == "url":
            self._emit_text(self._read_required("url"))
        elif name == "href":
            self._read_required("href")
            self.pending_owner = "href"
        elif name == "textcolor":
            self._read_optional()
            self._read_required("textcolor")  # color spec
            self.pending_owner = "textcolor"  # next group renders
        elif name == "fcolorbox":
            self._read_required("fcolorbox")
            self._read_required("fcolorbox")
            self.pending_owner = "fcolorbox"
        elif name == "colorbox":
            self._read_required("colorbox")
            self.pending_owner = "colorbox"
        elif name == "pdfcomment":
            self._read_optional()
            note = self._read_required("pdfcomment")
            if engine.flags.get("instructornotes", True):
                self._flush_text()
                self.frame.blocks.append(Block("note", _clean_inline(note)))
        elif name in ("titlepage", "maketitle"):
            self._flush_text()
            self.frame.blocks.append(Block("titlepage"))
        elif name == "tableofcontents":
            self._read_optional()
            self._flush_text()
            self.frame.blocks.append(Block("toc", entries=tuple(engine.model.sections)))
        elif name in CONSUME_ARGS:
            self._read_optional()
            for _ in range(CONSUME_ARGS[name]):
                self._read_required(name)
        elif name in NOOP_COMMANDS:
            pass
        elif name in engine.flags:
            # bare \ifFLAG inside a frame: skip to \fi, honoring the flag
            self._conditional(name, start)
        elif re.fullmatch(r"if[A-Za-z]+", name) and name[2:] in engine.flags:
            self._conditional(name[2:], start)
        elif name.endswith("true") and name[:-4] in engine.flags:
            engine.flags[name[:-4]] = True
        elif name.endswith("false") and name[:-5] in engine.flags:
            engine.flags[name[:-5]] = False
        else:
            line = self.origin.line_at(start)
            raise TexHalt(
                TexError(
                    "Undefined control sequence.",
                    line,
                    f"\\{name}",
                )
            )

    def _conditional(self, flag: str, start: int) -> None:
        fi = self.text.find("\\fi", self.pos)
        if fi == -1:
            self._halt(f"Incomplete \\if{flag}; all text was ignored after line.", start)
        else_pos = self.text.find("\\else", self.pos, fi)
        # taken branch stays in the scan stream; skipped branch is dropped
        if self.engine.flags.get(flag, False):
            end_branch = else_pos if else_pos != -1 else fi
            branch = self.text[self.pos : end_branch]
        else:
            branch = self.text[else_pos + 5 : fi] if else_pos != -1 else ""
        tail = self.text[fi + 3 :]
        tail_origin_start = fi + 3
        # splice branch in place of the whole conditional
        self.origin.splice(self.pos, tail_origin_start, len(branch))
        self.text = self.text[: self.pos] + branch + tail

    def _begin_env(self, start: int) -> None:
        env = self._read_required("begin").strip()
        line = self.origin.line_at(start)
        if env in OPAQUE_ENVS:
            self._skip_opaque(env, start)
        elif env == "thebibliography":
            self._bibliography(start)
        elif env in ("itemize", "enumerate", "description"):
            self._flush_text()
            self._read_optional()
            self.bullet_depth += 1
            self.env_stack.append((env, line))
        elif env in TRANSPARENT_ENVS:
            self._read_optional()
            self.env_stack.append((env, line))
            if env in ("block", "alertblock", "exampleblock"):
                heading = self._read_required(env)
                self._flush_text()
                if heading:
                    self.frame.blocks.append(Block("heading", _clean_inline(heading)))
            elif env in ("column", "minipage"):
                self._read_required(env)
        else:
            raise TexHalt(
                TexError(f"LaTeX Error: Environment {env} undefined.", line, f"\\begin{{{env}}}")
            )

    def _end_env(self, start: int) -> None:
        env = self._read_required("end").strip()
        line = self.origin.line_at(start)
        if not self.env_stack:
            raise TexHalt(
                TexError(
                    f"LaTeX Error: \\end{{{env}}} without matching \\begin.",
                    line,
                    f"\\end{{{env}}}",
                )
            )
        open_env, open_line = self.env_stack.pop()
        if open_env != env:
            raise TexHalt(
                TexError(
                    f"LaTeX Error: \\begin{{{open_env}}} on input line {open_line} ended by "
                    f"\\end{{{env}}}.",
                    line,
                    f"\\end{{{env}}}",
                )
            )
        if env in ("itemize", "enumerate", "description"):
            self._flush_text()
            self.bullet_depth -= 1
            if self.bullet_depth == 0:
                self.in_bullet = False

    def _skip_opaque(self, env: str, start: int) -> None:
        begin_re = re.compile(r"\\begin\s*\{" + re.escape(env) + r"\}")
        end_re = re.compile(r"\\end\s*\{" + re.escape(env) + r"\}")
        depth = 1
        cursor = self.pos
        while depth:
            end_m = end_re.search(self.text, cursor)
            if end_m is None:
                line = self.origin.line_at(start)
                raise TexHalt(
                    TexError(
                        f"File ended while scanning \\begin{{{env}}}.",
                        line,
                        self.engine._source_line(line),
                    )
                )
            begin_m = begin_re.search(self.text, cursor, end_m.start())
            if begin_m is not None:
                depth += 1
                cursor = begin_m.end()
            else:
                depth -= 1
                cursor = end_m.end()
        content = self.text[self.pos : cursor]
        inner = re.sub(r"\\end\s*\{" + re.escape(env) + r"\}\s*$", "", content)
        self._flush_text()
        if env in _CODE_ENVS:
            self.frame.blocks.append(Block("code", inner.strip()))
        elif env in _FORMULA_ENVS:
            self.frame.blocks.append(Block("formula", inner.strip()))
        else:
            hint = _clean_inline(content[:160])
            self.frame.blocks.append(Block("picture", hint, entries=(env,)))
        self.pos = cursor

    def _bibliography(self, start: int) -> None:
        end_re = re.compile(r"\\end\s*\{thebibliography\}")
        end_m = end_re.search(self.text, self.pos)
        if end_m is None:
            line = self.origin.line_at(start)
            raise TexHalt(
                TexError(
                    f"LaTeX Error: \\begin{{thebibliography}} on input line {line} ended by "
                    "\\end{frame}.",
                    line,
                    self.engine._source_line(line),
                )
            )
        content = self.text[self.pos : end_m.start()]
        pos = skip_ws(content, 0)
        if pos < len(content) and content[pos] == "{":
            try:
                _, pos = read_group(content, pos)
            except Exception:
                pass
        entries = []
        parts = re.split(r"\\bibitem\s*\{([^}]*)\}", content[pos:])
        # parts: [before, key1, text1, key2, text2, ...]
        for i in range(1, len(parts), 2):
            key = parts[i].strip()
            text = _clean_inline(parts[i + 1]) if i + 1 < len(parts) else ""
            entries.append(f"[{key}] {text}")
        self._flush_text()
        self.frame.blocks.append(Block("bib", entries=tuple(entries)))
        self.pos = end_m.end()


def compile_text(raw: str) -> tuple[Optional[DeckModel], Optional[TexError]]:
    """Run the engine; returns (model, None) on success or (None, error)."""
    try:
        model = Engine(raw).run()
    except TexHalt as halt:
        return None, halt.error
    return model, None
