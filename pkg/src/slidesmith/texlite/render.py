"""Render a DeckModel to PDF, one page per frame."""

from __future__ import annotations

import re
from pathlib import Path

from reportlab.lib.colors import Color
from reportlab.pdfgen.canvas import Canvas

from .engine import Block, DeckModel, RenderFrame

PAGE_W, PAGE_H = 576.0, 432.0  # 4:3
MARGIN = 34.0
TITLE_BAR_H = 44.0
BODY_FONT = "Helvetica"
BODY_SIZE = 12.0
LEADING = 16.0

_HEADER_BG = Color(0.13, 0.22, 0.42)
_ACCENT = Color(0.17, 0.32, 0.58)
_NOTE_BG = Color(1.0, 0.95, 0.62)
_BOX_BG = Color(0.93, 0.95, 0.99)


def _wrap(canvas: Canvas, text: str, font: str, size: float, width: float) -> list[str]:
    words = text.split()
    lines: list[str] = []
    current = ""
    for word in words:
        candidate = f"{current} {word}".strip()
        if canvas.stringWidth(candidate, font, size) <= width or not current:
            current = candidate
        else:
            lines.append(current)
            current = word
    if current:
        lines.append(current)
    return lines or [""]


class _Page:
    def __init__(self, canvas: Canvas, title: str) -> None:
        self.canvas = canvas
        self.y = PAGE_H - TITLE_BAR_H - 24
        canvas.setFillColor(_HEADER_BG)
        canvas.rect(0, PAGE_H - TITLE_BAR_H, PAGE_W, TITLE_BAR_H, stroke=0, fill=1)
        canvas.setFillColor(Color(1, 1, 1))
        canvas.setFont("Helvetica-Bold", 17)
        canvas.drawString(MARGIN, PAGE_H - TITLE_BAR_H + 14, title[:70])
        canvas.setFillColor(Color(0, 0, 0))

    def text_lines(
        self, text: str, font: str = BODY_FONT, size: float = BODY_SIZE, indent: float = 0.0
    ) -> None:
        width = PAGE_W - 2 * MARGIN - indent
        for line in _wrap(self.canvas, text, font, size, width):
            if self.y < MARGIN:
                return  # beamer-like: overflow is clipped, never paginated
            self.canvas.setFont(font, size)
            self.canvas.drawString(MARGIN + indent, self.y, line)
            self.y -= LEADING

    def gap(self, amount: float = 6.0) -> None:
        self.y -= amount


def _bullet(page: _Page, block: Block) -> None:
    indent = 14.0 * (block.depth - 1) if block.depth > 0 else 0.0
    marker = "•" if block.depth <= 1 else "–"
    canvas = page.canvas
    if page.y < MARGIN:
        return
    canvas.setFillColor(_ACCENT)
    canvas.setFont(BODY_FONT, BODY_SIZE)
    canvas.drawString(MARGIN + indent, page.y, marker)
    canvas.setFillColor(Color(0, 0, 0))
    width = PAGE_W - 2 * MARGIN - indent - 14
    lines = _wrap(canvas, block.text, BODY_FONT, BODY_SIZE, width)
    for line in lines:
        if page.y < MARGIN:
            return
        canvas.drawString(MARGIN + indent + 14, page.y, line)
        page.y -= LEADING
    page.gap(2)


def _picture(page: _Page, block: Block) -> None:
    height = 90.0
    if page.y - height < MARGIN:
        height = max(30.0, page.y - MARGIN)
    top = page.y
    canvas = page.canvas
    canvas.setFillColor(_BOX_BG)
    canvas.setStrokeColor(_ACCENT)
    canvas.rect(MARGIN, top - height, PAGE_W - 2 * MARGIN, height, stroke=1, fill=1)
    canvas.setFillColor(_ACCENT)
    canvas.setFont("Helvetica-Oblique", 10)
    label = block.entries[0] if block.entries else "figure"
    canvas.drawString(MARGIN + 8, top - 16, f"[{label}]")
    canvas.setFillColor(Color(0.25, 0.25, 0.25))
    canvas.setFont(BODY_FONT, 9)
    hint_width = PAGE_W - 2 * MARGIN - 16
    y = top - 32
    for line in _wrap(canvas, block.text, BODY_FONT, 9, hint_width)[:4]:
        canvas.drawString(MARGIN + 8, y, line)
        y -= 12
    canvas.setFillColor(Color(0, 0, 0))
    page.y = top - height - 10


def _note(page: _Page, block: Block) -> None:
    canvas = page.canvas
    text_width = PAGE_W - 2 * MARGIN - 24
    lines = _wrap(canvas, block.text, BODY_FONT, 9, text_width)[:5]
    height = 14 + 12 * len(lines)
    if page.y - height < MARGIN:
        return
    top = page.y
    canvas.setFillColor(_NOTE_BG)
    canvas.setStrokeColor(Color(0.7, 0.6, 0.1))
    canvas.rect(MARGIN + 10, top - height, PAGE_W - 2 * MARGIN - 20, height, stroke=1, fill=1)
    canvas.setFillColor(Color(0.25, 0.2, 0))
    y = top - 14
    canvas.setFont(BODY_FONT, 9)
    for line in lines:
        canvas.drawString(MARGIN + 18, y, line)
        y -= 12
    canvas.setFillColor(Color(0, 0, 0))
    page.y = top - height - 8


def _titlepage(page: _Page, model: DeckModel) -> None:
    canvas = page.canvas
    y = PAGE_H * 0.58
    canvas.setFont("Helvetica-Bold", 22)
    for line in _wrap(canvas, model.title or "Untitled presentation", "Helvetica-Bold", 22, PAGE_W - 2 * MARGIN):
        canvas.drawCentredString(PAGE_W / 2, y, line)
        y -= 26
    canvas.setFont(BODY_FONT, 13)
    if model.author:
        y -= 10
        canvas.drawCentredString(PAGE_W / 2, y, model.author)
    if model.institute:
        y -= 18
        canvas.drawCentredString(PAGE_W / 2, y, model.institute)
    if model.date:
        y -= 18
        canvas.drawCentredString(PAGE_W / 2, y, model.date)
    page.y = y - 30


def _render_frame(canvas: Canvas, frame: RenderFrame, model: DeckModel) -> None:
    page = _Page(canvas, frame.title or model.title or "")
    for block in frame.blocks:
        if block.kind == "bullet":
            _bullet(page, block)
        elif block.kind == "plain":
            page.text_lines(block.text)
            page.gap(4)
        elif block.kind == "heading":
            page.text_lines(block.text, font="Helvetica-Bold", size=13)
            page.gap(2)
        elif block.kind == "formula":
            page.gap(4)
            page.text_lines(block.text or "(formula)", font="Helvetica-Oblique", size=12, indent=30)
            page.gap(4)
        elif block.kind == "code":
            page.gap(4)
            for raw_line in block.text.splitlines()[:10]:
                page.text_lines(raw_line.strip(), font="Courier", size=9, indent=20)
            page.gap(4)
        elif block.kind == "picture":
            _picture(page, block)
        elif block.kind == "note":
            _note(page, block)
        elif block.kind == "titlepage":
            _titlepage(page, model)
        elif block.kind == "toc":
            sections = block.entries or ("(no sections)",)
            for i, section in enumerate(sections, start=1):
                page.text_lines(f"{i}. {section}", indent=10)
        elif block.kind == "bib":
            for entry in block.entries:
                page.text_lines(entry, size=10)
                page.gap(3)
    canvas.showPage()


def render_pdf(model: DeckModel, out_path: Path | str) -> int:
    """Write the deck PDF; returns the page count (one page per frame)."""
    out_path = Path(out_path)
    canvas = Canvas(str(out_path), pagesize=(PAGE_W, PAGE_H), invariant=1)
    canvas.setTitle(model.title or "presentation")
    for frame in model.frames:
        _render_frame(canvas, frame, model)
    canvas.save()
    return len(model.frames)


_PAGES_COUNT_RE = re.compile(rb"/Type\s*/Pages[^>]*?/Count\s+(\d+)")
_COUNT_PAGES_RE = re.compile(rb"/Count\s+(\d+)[^>]*?/Type\s*/Pages")
_PAGE_OBJ_RE = re.compile(rb"/Type\s*/Page(?![s/\w])")


def count_pdf_pages(path: Path | str) -> int:
    """Page count read from the document's page tree.

    Works for PDFs with a plain-text page tree (reportlab, pdflatex); raises
    ValueError when no page objects can be located.
    """
    data = Path(path).read_bytes()
    match = _PAGES_COUNT_RE.search(data) or _COUNT_PAGES_RE.search(data)
    if match:
        return int(match.group(1))
    pages = len(_PAGE_OBJ_RE.findall(data))
    if pages == 0:
        raise ValueError(f"could not locate page objects in {path}")
    return pages
