"""Deck generation and the bounded compile-repair loop."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Callable, Optional

from ..enhancer.macros import macro_library
from ..gateway import LlmGateway, load_template, render_template, require_complete
from ..planning import SlidePlan, serialize_plan, format_context
from ..retrieval import SourceSelection
from .beamer import BeamerSource, parse_beamer, strip_fences
from .compiler import CompileReport, EngineConfig, compile_deck

logger = logging.getLogger(__name__)

DEFAULT_MAX_ATTEMPTS = 3

MACRO_LIBRARY_BEGIN = "% --- slidesmith macro library ---"
MACRO_LIBRARY_END = "% --- end slidesmith macro library ---"


class RepairError(Exception):
    pass


class MaxAttemptsExceeded(RepairError):
    def __init__(self, attempts: int, report: CompileReport) -> None:
        self.attempts = attempts
        self.report = report
        super().__init__(
            f"compile still failing after {attempts} repair attempts: {report.describe_error()}"
        )


class RepairRejected(RepairError):
    pass


def library_block() -> str:
    return f"{MACRO_LIBRARY_BEGIN}\n{macro_library()}{MACRO_LIBRARY_END}\n"


def ensure_macro_library(raw: str) -> str:
    """Inline the figure-macro library into the preamble once."""
    if MACRO_LIBRARY_BEGIN in raw:
        return raw
    anchor = "\\begin{document}"
    pos = raw.find(anchor)
    if pos == -1:
        return raw
    return raw[:pos] + library_block() + raw[pos:]


def generate_beamer(
    gateway: LlmGateway,
    plan: SlidePlan,
    context: SourceSelection,
    topic: str,
    extra_instructions: str = "",
) -> BeamerSource:
    """Produce a parsed deck from the plan; parse failure is an error, never a
    silent passthrough."""
    template = load_template("beamer_codegen")
    prompt = render_template(
        template,
        {
            "plan": serialize_plan(plan),
            "context": format_context(context.ranked),
            "topic": topic,
        },
    )
    if extra_instructions:
        prompt += f"\nRevision instructions from the instructor:\n{extra_instructions}\n"
    completion = gateway.complete(template.role, prompt)
    raw = strip_fences(require_complete(completion, "beamer source")).strip() + "\n"
    return parse_beamer(ensure_macro_library(raw))


def repair(
    gateway: LlmGateway,
    source: BeamerSource,
    report: CompileReport,
    attempt: int,
) -> BeamerSource:
    """One repair round trip; guards against the model rewriting the deck.

    The repaired deck may differ from the broken one by at most one frame,
    otherwise the candidate is rejected.
    """
    if report.success:
        raise RepairError("repair called with a successful compile report")
    template = load_template("repair")
    prompt = render_template(
        template,
        {
            "error": report.describe_error(),
            "log": report.log_excerpt,
            "source": source.raw,
        },
    )
    completion = gateway.complete(template.role, prompt)
    raw = strip_fences(require_complete(completion, f"repair attempt {attempt}")).strip() + "\n"
    repaired = parse_beamer(raw)
    drift = abs(len(repaired.frames) - len(source.frames))
    if drift > 1:
        raise RepairRejected(
            f"repair attempt {attempt} changed frame count by {drift} (max 1)"
        )
    return repaired


def compile_with_repair(
    gateway: LlmGateway,
    source: BeamerSource,
    workdir: Path,
    engine: Optional[EngineConfig] = None,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    on_attempt: Optional[Callable[[int, BeamerSource, CompileReport], None]] = None,
) -> tuple[BeamerSource, CompileReport]:
    """Drive compile -> repair until success or the repair-attempt bound.

    ``max_attempts`` bounds repair attempts, so at most ``max_attempts + 1``
    compiles run. ``on_attempt`` observes every compile (for log persistence).
    Terminates with either a successful report or MaxAttemptsExceeded; never
    a partial.
    """
    current = source
    report = compile_deck(current, workdir, engine)
    if on_attempt is not None:
        on_attempt(1, current, report)
    if report.success:
        return current, report
    for attempt in range(1, max_attempts + 1):
        logger.info("compile failed (%s); repair attempt %d", report.describe_error(), attempt)
        current = repair(gateway, current, report, attempt)
        report = compile_deck(current, workdir, engine)
        if on_attempt is not None:
            on_attempt(attempt + 1, current, report)
        if report.success:
            return current, report
    raise MaxAttemptsExceeded(max_attempts, report)
