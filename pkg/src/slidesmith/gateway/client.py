"""Chat-completion client: one live HTTP gateway plus the shared call contract.

Every downstream module talks to a gateway through ``complete(role, prompt,
params)`` and never constructs provider requests itself, so decks can be
generated against a live provider, a recorded replay store, or a scripted
test double interchangeably.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
import time
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Callable, Optional, Protocol

import requests

from .templates import AgentRole

logger = logging.getLogger(__name__)


class FinishReason(Enum):
    STOP = "stop"
    TRUNCATED = "truncated"
    ERROR = "error"


@dataclass(frozen=True)
class Completion:
    text: str
    prompt_tokens: int
    completion_tokens: int
    finish: FinishReason


@dataclass(frozen=True)
class SamplingParams:
    temperature: float = 0.0
    max_tokens: int = 4096
    timeout_s: float = 120.0


# Parse-sensitive roles run greedy; summarization gets mild variety.
DEFAULT_PARAMS: dict[AgentRole, SamplingParams] = {
    AgentRole.MODERATOR: SamplingParams(temperature=0.0),
    AgentRole.RETRIEVER: SamplingParams(temperature=0.3),
    AgentRole.CODE_GENERATOR: SamplingParams(temperature=0.0, max_tokens=8192),
    AgentRole.ENHANCER: SamplingParams(temperature=0.0, max_tokens=8192),
}

# Prompt-size accounting used for context budgets; a coarse chars/4 estimate
# keeps the gateway tokenizer-free.
def estimate_tokens(text: str) -> int:
    return (len(text) + 3) // 4


def transcript_key(prompt: str) -> str:
    """Stable cross-platform identity for a prompt; keys the replay store."""
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


class GatewayError(Exception):
    """Base class for completion failures."""


class GatewayTimeout(GatewayError):
    pass


class ProviderError(GatewayError):
    def __init__(self, status: int, detail: str = "") -> None:
        self.status = status
        super().__init__(f"provider returned status {status}: {detail[:200]}")


class TruncatedCompletion(GatewayError):
    """Raised by callers that must parse a completion but got a truncated one."""


class LlmGateway(Protocol):
    def complete(
        self, role: AgentRole, prompt: str, params: Optional[SamplingParams] = None
    ) -> Completion: ...


def params_for(role: AgentRole, params: Optional[SamplingParams]) -> SamplingParams:
    return params if params is not None else DEFAULT_PARAMS[role]


def require_complete(completion: Completion, what: str = "completion") -> str:
    """Return the text of a completion that is safe to parse."""
    if completion.finish is not FinishReason.STOP:
        raise TruncatedCompletion(f"{what} finished with {completion.finish.value}; text unusable")
    return completion.text


# transport(payload, timeout_s) -> (status_code, response_json)
Transport = Callable[[dict[str, Any], float], tuple[int, dict[str, Any]]]


class TransportFailure(Exception):
    """Connection-level failure; retried, unlike provider content errors."""


@dataclass(frozen=True)
class ProviderConfig:
    base_url: str
    model: str
    api_key: str = ""
    max_in_flight: int = 4
    retries: int = 2
    backoff_s: float = 0.5

    @classmethod
    def from_env(cls) -> "ProviderConfig":
        base_url = os.environ.get("SLIDESMITH_LLM_BASE_URL", "")
        if not base_url:
            raise GatewayError("SLIDESMITH_LLM_BASE_URL is not set; no live provider configured")
        return cls(
            base_url=base_url,
            model=os.environ.get("SLIDESMITH_LLM_MODEL", "gpt-4o-mini"),
            api_key=os.environ.get("SLIDESMITH_LLM_API_KEY", ""),
        )


def _http_transport(config: ProviderConfig) -> Transport:
    session = requests.Session()
    url = config.base_url.rstrip("/") + "/chat/completions"
    headers = {"Content-Type": "application/json"}
    if config.api_key:
        headers["Authorization"] = f"Bearer {config.api_key}"

    def send(payload: dict[str, Any], timeout_s: float) -> tuple[int, dict[str, Any]]:
        try:
            resp = session.post(url, json=payload, headers=headers, timeout=timeout_s)
        except requests.Timeout as exc:
            raise GatewayTimeout(str(exc)) from exc
        except requests.RequestException as exc:
            raise TransportFailure(str(exc)) from exc
        try:
            body = resp.json()
        except ValueError:
            body = {"raw": resp.text}
        return resp.status_code, body

    return send


class LiveGateway:
    """Chat-completion calls against an OpenAI-style JSON endpoint.

    Retries transport failures and 5xx responses with exponential backoff;
    content-level failures are never retried here (the repair loop owns those).
    """

    def __init__(self, config: ProviderConfig, transport: Optional[Transport] = None) -> None:
        self.config = config
        self._transport = transport if transport is not None else _http_transport(config)
        self._slots = threading.BoundedSemaphore(config.max_in_flight)
        self.calls = 0

    def complete(
        self, role: AgentRole, prompt: str, params: Optional[SamplingParams] = None
    ) -> Completion:
        if not prompt:
            raise GatewayError("prompt must be non-empty")
        p = params_for(role, params)
        payload = {
            "model": self.config.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": p.temperature,
            "max_tokens": p.max_tokens,
        }
        attempt = 0
        with self._slots:
            while True:
                self.calls += 1
                try:
                    status, body = self._transport(payload, p.timeout_s)
                except TransportFailure as exc:
                    if attempt >= self.config.retries:
                        raise GatewayError(f"transport failed after retries: {exc}") from exc
                    time.sleep(self.config.backoff_s * (2**attempt))
                    attempt += 1
                    continue
                if status >= 500:
                    if attempt >= self.config.retries:
                        raise ProviderError(status, json.dumps(body)[:200])
                    time.sleep(self.config.backoff_s * (2**attempt))
                    attempt += 1
                    continue
                if status != 200:
                    raise ProviderError(status, json.dumps(body)[:200])
                return _parse_response(body)


def _parse_response(body: dict[str, Any]) -> Completion:
    try:
        choice = body["choices"][0]
        text = choice["message"]["content"]
        finish_raw = choice.get("finish_reason", "stop")
    except (KeyError, IndexError, TypeError) as exc:
        raise ProviderError(200, f"malformed response body: {exc}") from None
    usage = body.get("usage", {})
    finish = FinishReason.TRUNCATED if finish_raw == "length" else FinishReason.STOP
    return Completion(
        text=text,
        prompt_tokens=int(usage.get("prompt_tokens", 0)),
        completion_tokens=int(usage.get("completion_tokens", 0)),
        finish=finish,
    )
