from .arxiv import (
    ArxivClient,
    ArxivError,
    ArxivTransportError,
    MalformedFeed,
    PaperRecord,
    SortOrder,
    build_query,
    parse_feed,
    pdf_link_for,
)
from .retriever import (
    Citation,
    EmptyKeywordSet,
    KeywordSet,
    NoneSelected,
    RetrievalError,
    SourceKind,
    SourceSelection,
    SourceSummary,
    SummaryTruncated,
    format_candidates,
    generate_keywords,
    parse_keywords,
    retrieve_textbook,
    select_sources,
    summarize,
)

__all__ = [
    "ArxivClient",
    "ArxivError",
    "ArxivTransportError",
    "Citation",
    "EmptyKeywordSet",
    "KeywordSet",
    "MalformedFeed",
    "NoneSelected",
    "PaperRecord",
    "RetrievalError",
    "SortOrder",
    "SourceKind",
    "SourceSelection",
    "SourceSummary",
    "SummaryTruncated",
    "build_query",
    "format_candidates",
    "generate_keywords",
    "parse_feed",
    "parse_keywords",
    "pdf_link_for",
    "retrieve_textbook",
    "select_sources",
    "summarize",
]
