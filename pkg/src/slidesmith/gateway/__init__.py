from .client import (
    Completion,
    FinishReason,
    GatewayError,
    GatewayTimeout,
    LiveGateway,
    LlmGateway,
    ProviderConfig,
    ProviderError,
    SamplingParams,
    TruncatedCompletion,
    estimate_tokens,
    params_for,
    require_complete,
    transcript_key,
)
from .replay import MissingFixture, RecordingGateway, ReplayGateway, ScriptedGateway
from .templates import (
    AgentRole,
    BadTemplate,
    MissingBinding,
    PromptTemplate,
    TemplateError,
    catalog,
    load_template,
    render_template,
)

__all__ = [
    "AgentRole",
    "BadTemplate",
    "Completion",
    "FinishReason",
    "GatewayError",
    "GatewayTimeout",
    "LiveGateway",
    "LlmGateway",
    "MissingBinding",
    "MissingFixture",
    "PromptTemplate",
    "ProviderConfig",
    "ProviderError",
    "RecordingGateway",
    "ReplayGateway",
    "SamplingParams",
    "ScriptedGateway",
    "TemplateError",
    "TruncatedCompletion",
    "catalog",
    "estimate_tokens",
    "load_template",
    "params_for",
    "render_template",
    "require_complete",
    "transcript_key",
]
