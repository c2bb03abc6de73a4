"""Command-line front end mirroring the pdflatex calling convention.

Usage: ``slidesmith-texlite [options] file.tex``. The pdflatex flags
``-interaction=...``, ``-halt-on-error`` and ``-file-line-error`` are accepted
and ignored (the engine always halts on the first error); ``-output-directory``
is honored. Writes ``<jobname>.log`` and, on success, ``<jobname>.pdf``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .engine import TexError, compile_text
from .render import render_pdf

BANNER = "This is TeXLite, the slidesmith bundled subset engine"


def _format_error(error: TexError) -> str:
    lines = [f"! {error.message}"]
    if error.line is not None:
        context = f" {error.context}" if error.context else ""
        lines.append(f"l.{error.line}{context}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="slidesmith-texlite", add_help=True)
    parser.add_argument("-interaction", nargs="?", default=None)
    parser.add_argument("-halt-on-error", action="store_true", dest="halt_on_error")
    parser.add_argument("-file-line-error", action="store_true", dest="file_line_error")
    parser.add_argument("-output-directory", dest="output_directory", default=None)
    parser.add_argument("texfile")
    args, _unknown = parser.parse_known_args(argv)

    tex_path = Path(args.texfile)
    out_dir = Path(args.output_directory) if args.output_directory else tex_path.parent
    out_dir.mkdir(parents=True, exist_ok=True)
    jobname = tex_path.stem
    log_path = out_dir / f"{jobname}.log"
    pdf_path = out_dir / f"{jobname}.pdf"

    log_lines = [BANNER, f"({tex_path})"]
    if not tex_path.exists():
        log_lines.append(f"! I can't find file `{tex_path}'.")
        log_text = "\n".join(log_lines) + "\n"
        log_path.write_text(log_text, encoding="utf-8")
        sys.stdout.write(log_text)
        return 1

    raw = tex_path.read_text(encoding="utf-8", errors="replace")
    model, error = compile_text(raw)
    if error is not None:
        log_lines.append(_format_error(error))
        log_lines.append(")")
        log_lines.append("No pages of output.")
        log_text = "\n".join(log_lines) + "\n"
        log_path.write_text(log_text, encoding="utf-8")
        sys.stdout.write(log_text)
        return 1

    assert model is not None
    for warning in model.warnings:
        log_lines.append(f"LaTeX Warning: {warning}")
    if model.frames:
        pages = render_pdf(model, pdf_path)
        log_lines.append(")")
        log_lines.append(f"Output written on {pdf_path.name} ({pages} pages).")
    else:
        log_lines.append(")")
        log_lines.append("No pages of output.")
    log_text = "\n".join(log_lines) + "\n"
    log_path.write_text(log_text, encoding="utf-8")
    sys.stdout.write(log_text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
