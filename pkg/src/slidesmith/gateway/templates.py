"""Prompt templates for the four pipeline agents.

Templates live as text assets next to this module, one file per prompt.
Placeholders are written ``{name}``; literal braces are escaped ``{{``/``}}``.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from typing import Iterator, Mapping

logger = logging.getLogger(__name__)

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class AgentRole(Enum):
    MODERATOR = "moderator"
    RETRIEVER = "retriever"
    CODE_GENERATOR = "code_generator"
    ENHANCER = "enhancer"


class TemplateError(Exception):
    """Base class for template loading and rendering failures."""


class BadTemplate(TemplateError):
    """Template text contains a brace that is neither a placeholder nor escaped."""


class MissingBinding(TemplateError):
    def __init__(self, name: str, template_id: str = "") -> None:
        self.name = name
        super().__init__(f"no binding for placeholder {{{name}}} in template {template_id or '?'}")


@dataclass(frozen=True)
class PromptTemplate:
    id: str
    role: AgentRole
    body: str

    def placeholders(self) -> list[str]:
        """Placeholder names in first-appearance order, deduplicated."""
        seen: list[str] = []
        for kind, value in _scan(self.body):
            if kind == "placeholder" and value not in seen:
                seen.append(value)
        return seen


def _scan(body: str) -> Iterator[tuple[str, str]]:
    """Yield ("literal", text) and ("placeholder", name) parts of a template body."""
    i = 0
    n = len(body)
    literal: list[str] = []
    while i < n:
        ch = body[i]
        if ch == "{":
            if body.startswith("{{", i):
                literal.append("{")
                i += 2
                continue
            m = _NAME_RE.match(body, i + 1)
            if m is None or i + 1 + len(m.group(0)) >= n or body[m.end()] != "}":
                raise BadTemplate(f"stray '{{' at offset {i}")
            if literal:
                yield "literal", "".join(literal)
                literal = []
            yield "placeholder", m.group(0)
            i = m.end() + 1
        elif ch == "}":
            if body.startswith("}}", i):
                literal.append("}")
                i += 2
                continue
            raise BadTemplate(f"stray '}}' at offset {i}")
        else:
            literal.append(ch)
            i += 1
    if literal:
        yield "literal", "".join(literal)


def render_template(template: PromptTemplate, bindings: Mapping[str, str]) -> str:
    """Substitute every placeholder; bindings must cover them all.

    Extra bindings are tolerated with a warning so call sites can share one
    binding dict across several templates.
    """
    names = set(template.placeholders())
    extra = set(bindings) - names
    if extra:
        logger.warning("template %s: unused bindings %s", template.id, sorted(extra))
    parts: list[str] = []
    for kind, value in _scan(template.body):
        if kind == "literal":
            parts.append(value)
        else:
            if value not in bindings:
                raise MissingBinding(value, template.id)
            parts.append(bindings[value])
    return "".join(parts)


_CATALOG_SPEC: dict[str, AgentRole] = {
    "keywords": AgentRole.MODERATOR,
    "summarize": AgentRole.RETRIEVER,
    "select_sources": AgentRole.MODERATOR,
    "slide_plan": AgentRole.MODERATOR,
    "beamer_codegen": AgentRole.CODE_GENERATOR,
    "repair": AgentRole.CODE_GENERATOR,
    "figures": AgentRole.ENHANCER,
    "comments": AgentRole.ENHANCER,
}

_catalog_cache: dict[str, PromptTemplate] = {}


def load_template(template_id: str) -> PromptTemplate:
    if template_id not in _CATALOG_SPEC:
        raise TemplateError(f"unknown template id: {template_id!r}")
    if template_id not in _catalog_cache:
        body = (
            resources.files("slidesmith.gateway")
            .joinpath(f"assets/{template_id}.txt")
            .read_text(encoding="utf-8")
        )
        tpl = PromptTemplate(id=template_id, role=_CATALOG_SPEC[template_id], body=body)
        tpl.placeholders()  # surfaces BadTemplate for malformed assets at load time
        _catalog_cache[template_id] = tpl
    return _catalog_cache[template_id]


def catalog() -> dict[str, PromptTemplate]:
    """All templates, keyed by id."""
    return {tid: load_template(tid) for tid in _CATALOG_SPEC}
