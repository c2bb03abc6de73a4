"""Record/replay store so every pipeline stage runs offline in tests and CI.

Fixture format: one JSON file per transcript key, named ``<key>.json``::

    {
      "prompt": "<full prompt text>",
      "completion": {"text": "...", "prompt_tokens": 0,
                     "completion_tokens": 0, "finish": "stop"}
    }

The key is ``sha256(prompt)`` in hex (see ``transcript_key``); the key of the
empty prompt is the well-known sha256 empty digest
``e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .client import Completion, FinishReason, GatewayError, LlmGateway, SamplingParams, estimate_tokens, transcript_key
from .templates import AgentRole


class MissingFixture(GatewayError):
    def __init__(self, key: str, prompt: str) -> None:
        self.key = key
        head = prompt.splitlines()[0][:80] if prompt else ""
        super().__init__(f"no replay fixture for key {key} (prompt starts: {head!r})")


def _completion_to_json(completion: Completion) -> dict:
    return {
        "text": completion.text,
        "prompt_tokens": completion.prompt_tokens,
        "completion_tokens": completion.completion_tokens,
        "finish": completion.finish.value,
    }


def _completion_from_json(data: dict) -> Completion:
    return Completion(
        text=data["text"],
        prompt_tokens=int(data.get("prompt_tokens", 0)),
        completion_tokens=int(data.get("completion_tokens", 0)),
        finish=FinishReason(data.get("finish", "stop")),
    )


class ReplayGateway:
    """Serves recorded completions only; performs no network operations."""

    def __init__(self, fixture_dir: Path | str) -> None:
        self.fixture_dir = Path(fixture_dir)
        self._store: dict[str, Completion] = {}
        self.calls = 0
        if not self.fixture_dir.is_dir():
            raise GatewayError(f"replay fixture directory not found: {self.fixture_dir}")
        for path in sorted(self.fixture_dir.glob("*.json")):
            record = json.loads(path.read_text(encoding="utf-8"))
            self._store[path.stem] = _completion_from_json(record["completion"])

    def __len__(self) -> int:
        return len(self._store)

    def complete(
        self, role: AgentRole, prompt: str, params: Optional[SamplingParams] = None
    ) -> Completion:
        self.calls += 1
        key = transcript_key(prompt)
        if key not in self._store:
            raise MissingFixture(key, prompt)
        return self._store[key]


class RecordingGateway:
    """Wraps another gateway and writes each exchange as a replay fixture."""

    def __init__(self, inner: LlmGateway, fixture_dir: Path | str) -> None:
        self.inner = inner
        self.fixture_dir = Path(fixture_dir)
        self.fixture_dir.mkdir(parents=True, exist_ok=True)

    def complete(
        self, role: AgentRole, prompt: str, params: Optional[SamplingParams] = None
    ) -> Completion:
        completion = self.inner.complete(role, prompt, params)
        key = transcript_key(prompt)
        record = {"prompt": prompt, "completion": _completion_to_json(completion)}
        path = self.fixture_dir / f"{key}.json"
        path.write_text(json.dumps(record, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        return completion


class ScriptedGateway:
    """Maps prompt predicates to canned completion texts; fixture-authoring aid.

    Rules are (match, text) pairs where ``match`` is a substring the prompt
    must contain. First matching rule wins; rules marked ``once`` are consumed
    so sequential calls with identical prompts can step through responses.
    """

    def __init__(self) -> None:
        self._rules: list[dict] = []
        self.calls = 0
        self.prompts: list[str] = []

    def add(self, match: str, text: str, once: bool = False) -> "ScriptedGateway":
        self._rules.append({"match": match, "text": text, "once": once})
        return self

    def complete(
        self, role: AgentRole, prompt: str, params: Optional[SamplingParams] = None
    ) -> Completion:
        self.calls += 1
        self.prompts.append(prompt)
        for rule in self._rules:
            if rule["match"] in prompt:
                if rule["once"]:
                    self._rules.remove(rule)
                return Completion(
                    text=rule["text"],
                    prompt_tokens=estimate_tokens(prompt),
                    completion_tokens=estimate_tokens(rule["text"]),
                    finish=FinishReason.STOP,
                )
        raise GatewayError(f"no scripted rule matches prompt starting {prompt[:80]!r}")
