"""arXiv export API client and Atom feed parser."""

from __future__ import annotations

import re
import threading
import time
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from datetime import date, datetime
from enum import Enum
from typing import Callable, Optional

import requests

ARXIV_API_URL = "https://export.arxiv.org/api/query"
_ATOM = {"atom": "http://www.w3.org/2005/Atom", "arxiv": "http://arxiv.org/schemas/atom"}

# New-style (2007+) and old-style (archive/NNNNNNN) identifiers.
ARXIV_ID_RE = re.compile(r"^(?:\d{4}\.\d{4,5}|[a-z\-]+(?:\.[A-Z]{2})?/\d{7})(?:v\d+)?$")


class ArxivError(Exception):
    pass


class ArxivTransportError(ArxivError):
    pass


class MalformedFeed(ArxivError):
    pass


class SortOrder(Enum):
    RELEVANCE = "relevance"
    DATE = "submittedDate"


@dataclass(frozen=True)
class PaperRecord:
    title: str
    arxiv_id: str
    updated: date
    link: str
    abstract: str
    authors: tuple[str, ...]
    category: str
    pdf_link: str
    comment: Optional[str] = None
    journal_ref: Optional[str] = None

    def __post_init__(self) -> None:
        if not ARXIV_ID_RE.match(self.arxiv_id):
            raise MalformedFeed(f"bad arXiv identifier: {self.arxiv_id!r}")


def pdf_link_for(arxiv_id: str) -> str:
    return f"https://arxiv.org/pdf/{arxiv_id}"


def build_query(keywords: list[str]) -> str:
    """All-fields conjunction over the keyword list."""
    return " AND ".join(f'all:"{kw}"' for kw in keywords)


def _text(entry: ET.Element, tag: str) -> str:
    value = entry.findtext(tag, default="", namespaces=_ATOM)
    return re.sub(r"\s+", " ", value).strip()


def _parse_date(raw: str) -> date:
    try:
        return datetime.fromisoformat(raw.replace("Z", "+00:00")).date()
    except ValueError as exc:
        raise MalformedFeed(f"bad date in feed: {raw!r}") from exc


def parse_entry(entry: ET.Element) -> PaperRecord:
    id_url = _text(entry, "atom:id")
    arxiv_id = id_url.rsplit("/abs/", 1)[-1] if "/abs/" in id_url else id_url
    if not arxiv_id:
        raise MalformedFeed("entry has no id")
    link = ""
    pdf_link = ""
    for link_el in entry.findall("atom:link", _ATOM):
        href = link_el.attrib.get("href", "")
        if link_el.attrib.get("title") == "pdf" or link_el.attrib.get("type") == "application/pdf":
            pdf_link = href
        elif link_el.attrib.get("rel") == "alternate" or link_el.attrib.get("type") == "text/html":
            link = href
    category_el = entry.find("arxiv:primary_category", _ATOM)
    category = category_el.attrib.get("term", "") if category_el is not None else ""
    authors = tuple(
        name
        for author in entry.findall("atom:author", _ATOM)
        if (name := (author.findtext("atom:name", default="", namespaces=_ATOM) or "").strip())
    )
    return PaperRecord(
        title=_text(entry, "atom:title"),
        arxiv_id=arxiv_id,
        updated=_parse_date(_text(entry, "atom:updated")),
        link=link or id_url,
        abstract=_text(entry, "atom:summary"),
        authors=authors,
        category=category,
        pdf_link=pdf_link or pdf_link_for(arxiv_id),
        comment=_text(entry, "arxiv:comment") or None,
        journal_ref=_text(entry, "arxiv:journal_ref") or None,
    )


def parse_feed(xml_text: str) -> list[PaperRecord]:
    """Parse an Atom query response; an entry-free feed yields an empty list."""
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        raise MalformedFeed(f"feed is not well-formed XML: {exc}") from exc
    if root.tag != f"{{{_ATOM['atom']}}}feed":
        raise MalformedFeed(f"unexpected feed root element {root.tag!r}")
    return [parse_entry(entry) for entry in root.findall("atom:entry", _ATOM)]


# fetch_fn(params) -> body text; injectable for tests and canned feeds
FetchFn = Callable[[dict[str, str]], str]


def _http_fetch(params: dict[str, str]) -> str:
    try:
        resp = requests.get(ARXIV_API_URL, params=params, timeout=30)
        resp.raise_for_status()
    except requests.RequestException as exc:
        raise ArxivTransportError(str(exc)) from exc
    return resp.text


class ArxivClient:
    """Query client honoring the polite one-request-per-3-seconds limit."""

    def __init__(self, fetch_fn: FetchFn | None = None, throttle_s: float = 3.0) -> None:
        self._fetch = fetch_fn if fetch_fn is not None else _http_fetch
        self._throttle_s = throttle_s
        self._last_request = 0.0
        self._lock = threading.Lock()

    def fetch(
        self,
        keywords: list[str],
        sort: SortOrder = SortOrder.RELEVANCE,
        max_results: int = 10,
    ) -> list[PaperRecord]:
        if not 1 <= max_results <= 50:
            raise ValueError(f"max_results must be in [1, 50], got {max_results}")
        params = {
            "search_query": build_query(keywords),
            "start": "0",
            "max_results": str(max_results),
            "sortBy": sort.value,
            "sortOrder": "descending",
        }
        with self._lock:
            wait = self._throttle_s - (time.monotonic() - self._last_request)
            if wait > 0:
                time.sleep(wait)
            body = self._fetch(params)
            self._last_request = time.monotonic()
        records = parse_feed(body)
        return records[:max_results]
