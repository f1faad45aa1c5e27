"""The model gateway: one object bundling chat, embeddings, and templates."""

from __future__ import annotations

from dataclasses import dataclass, field

from tutorkit.gateway.embeddings import Embedding, EmbeddingProvider
from tutorkit.gateway.providers import (
    ChatProvider,
    CompletionRequest,
    CompletionResult,
    DecodingParams,
)
from tutorkit.gateway.templates import TemplateRegistry

# Learner-facing tools sample at a conversational temperature; everything the
# engine parses (reflection, reaction, routing) decodes greedily.
INTERACTION_TAGS = frozenset({"teach", "answer", "quiz", "evaluation"})
DEFAULT_INTERACTION_TEMPERATURE = 0.7
DEFAULT_BACKEND_TEMPERATURE = 0.0
DEFAULT_MAX_OUTPUT_TOKENS = 1024


@dataclass
class DecodingPolicy:
    """Per-tool decoding parameters with sensible defaults."""

    interaction_temperature: float = DEFAULT_INTERACTION_TEMPERATURE
    backend_temperature: float = DEFAULT_BACKEND_TEMPERATURE
    max_output_tokens: int = DEFAULT_MAX_OUTPUT_TOKENS
    overrides: dict[str, DecodingParams] = field(default_factory=dict)

    def for_tool(self, tool_tag: str) -> DecodingParams:
        if tool_tag in self.overrides:
            return self.overrides[tool_tag]
        temperature = (
            self.interaction_temperature
            if tool_tag in INTERACTION_TAGS
            else self.backend_temperature
        )
        return DecodingParams(temperature=temperature,
                              max_output_tokens=self.max_output_tokens)


class ModelGateway:
    """Uniform access to the chat provider, embedder, and prompt registry."""

    def __init__(self, chat: ChatProvider, embedder: EmbeddingProvider,
                 templates: TemplateRegistry,
                 decoding: DecodingPolicy | None = None):
        self.chat = chat
        self.embedder = embedder
        self.templates = templates
        self.decoding = decoding or DecodingPolicy()

    def render(self, template_id: str, bindings: dict[str, str]) -> str:
        return self.templates.render(template_id, bindings)

    def complete(self, prompt: str, tool_tag: str) -> CompletionResult:
        request = CompletionRequest(
            prompt=prompt, decoding=self.decoding.for_tool(tool_tag), tool_tag=tool_tag
        )
        return self.chat.complete(request)

    def embed(self, text: str) -> Embedding:
        return self.embedder.embed(text)
