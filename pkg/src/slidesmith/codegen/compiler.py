"""External LaTeX engine invocation and log parsing.

The engine is a configured command run in a per-job working directory in
nonstop mode: tex file in, exit code + log + PDF out. ``pdflatex`` is used
when present; otherwise the bundled subset engine (``slidesmith.texlite``)
keeps the pipeline fully functional on machines without a TeX installation.
"""

from __future__ import annotations

import re
import shlex
import shutil
import subprocess
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .beamer import BeamerSource


class CompileConfigError(Exception):
    pass


class EngineMissing(CompileConfigError):
    pass


@dataclass(frozen=True)
class FirstError:
    file: str
    line: Optional[int]
    message: str


@dataclass(frozen=True)
class CompileReport:
    success: bool
    log_excerpt: str
    first_error: Optional[FirstError]
    duration_s: float

    def describe_error(self) -> str:
        if self.first_error is None:
            return "unknown compile failure"
        loc = f" at line {self.first_error.line}" if self.first_error.line else ""
        return f"{self.first_error.message}{loc}"


@dataclass(frozen=True)
class EngineConfig:
    command: tuple[str, ...]
    timeout_s: float = 120.0


PDFLATEX_COMMAND = ("pdflatex", "-interaction=nonstopmode", "-halt-on-error", "-file-line-error")


def texlite_command() -> tuple[str, ...]:
    return (sys.executable, "-m", "slidesmith.texlite", "-interaction=nonstopmode")


def resolve_engine(spec: Optional[str] = None, timeout_s: float = 120.0) -> EngineConfig:
    """Map an engine spec to a runnable command.

    ``None``/``"auto"`` prefers pdflatex and falls back to the bundled engine;
    ``"texlite"`` forces the bundled engine; anything else is treated as an
    explicit command line whose executable must exist.
    """
    if spec is None or spec == "auto":
        if shutil.which("pdflatex"):
            return EngineConfig(command=PDFLATEX_COMMAND, timeout_s=timeout_s)
        return EngineConfig(command=texlite_command(), timeout_s=timeout_s)
    if spec == "texlite":
        return EngineConfig(command=texlite_command(), timeout_s=timeout_s)
    argv = tuple(shlex.split(spec))
    if not argv:
        raise CompileConfigError("engine command is empty")
    if shutil.which(argv[0]) is None and not Path(argv[0]).exists():
        raise EngineMissing(f"engine executable not found: {argv[0]}")
    return EngineConfig(command=argv, timeout_s=timeout_s)


_FILE_LINE_RE = re.compile(r"^(.*?\.tex):(\d+):\s*(.*)$")
_BANG_RE = re.compile(r"^!\s*(.+?)\s*$")
_LDOT_RE = re.compile(r"^l\.(\d+)")


def parse_log(log_text: str, tex_name: str = "deck.tex") -> Optional[FirstError]:
    """First error in a TeX log; understands both ``file:line:`` and ``!`` styles."""
    lines = log_text.splitlines()
    for i, line in enumerate(lines):
        m = _FILE_LINE_RE.match(line)
        if m:
            return FirstError(file=m.group(1), line=int(m.group(2)), message=m.group(3))
        m = _BANG_RE.match(line)
        if m:
            line_no = None
            for look in lines[i + 1 : i + 8]:
                lm = _LDOT_RE.match(look)
                if lm:
                    line_no = int(lm.group(1))
                    break
            return FirstError(file=tex_name, line=line_no, message=m.group(1))
    return None


def _excerpt(log_text: str, max_lines: int = 60) -> str:
    lines = log_text.splitlines()
    for i, line in enumerate(lines):
        if _FILE_LINE_RE.match(line) or _BANG_RE.match(line):
            return "\n".join(lines[max(0, i - 2) : i + 20])
    return "\n".join(lines[-max_lines:])


def compile_deck(
    source: Union[BeamerSource, str],
    workdir: Union[Path, str],
    engine: Optional[EngineConfig] = None,
    jobname: str = "deck",
) -> CompileReport:
    """Write the deck into workdir and run the engine there.

    A timeout is reported as a failed compile with a synthetic first error,
    not an exception; callers route it into the repair loop like any other
    failure.
    """
    engine = engine if engine is not None else resolve_engine()
    workdir = Path(workdir)
    workdir.mkdir(parents=True, exist_ok=True)
    raw = source.raw if isinstance(source, BeamerSource) else source
    tex_path = workdir / f"{jobname}.tex"
    tex_path.write_text(raw, encoding="utf-8")

    argv = list(engine.command) + [tex_path.name]
    started = time.monotonic()
    timed_out = False
    try:
        proc = subprocess.run(
            argv,
            cwd=workdir,
            stdout=subprocess.PIPE,
            stderr=subprocess.STDOUT,
            timeout=engine.timeout_s,
        )
        returncode = proc.returncode
        console = proc.stdout.decode("utf-8", errors="replace")
    except FileNotFoundError as exc:
        raise EngineMissing(f"engine executable not found: {argv[0]}") from exc
    except subprocess.TimeoutExpired as exc:
        returncode = -1
        console = (exc.stdout or b"").decode("utf-8", errors="replace")
        timed_out = True
    duration = time.monotonic() - started

    log_path = workdir / f"{jobname}.log"
    log_text = log_path.read_text(encoding="utf-8", errors="replace") if log_path.exists() else console
    pdf_exists = (workdir / f"{jobname}.pdf").exists()
    success = returncode == 0 and pdf_exists and not timed_out

    if timed_out:
        first_error: Optional[FirstError] = FirstError(
            file=tex_path.name,
            line=None,
            message=f"compilation exceeded the {engine.timeout_s:.0f}s wall-clock budget",
        )
    else:
        first_error = None if success else parse_log(log_text, tex_path.name)
        if not success and first_error is None:
            first_error = FirstError(
                file=tex_path.name,
                line=None,
                message=f"engine exited with code {returncode} and no parseable error",
            )
    return CompileReport(
        success=success,
        log_excerpt=_excerpt(log_text),
        first_error=first_error,
        duration_s=duration,
    )
