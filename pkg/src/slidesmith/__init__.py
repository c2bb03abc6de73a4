"""Retrieval-grounded multi-agent pipeline for compiled Beamer lecture decks."""

__version__ = "0.1.0"
