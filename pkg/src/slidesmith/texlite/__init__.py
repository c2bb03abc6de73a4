from .engine import DeckModel, TexError, compile_text
from .render import count_pdf_pages, render_pdf

__all__ = ["DeckModel", "TexError", "compile_text", "count_pdf_pages", "render_pdf"]
