from tutorkit.gateway.core import (
    DecodingPolicy,
    INTERACTION_TAGS,
    ModelGateway,
)
from tutorkit.gateway.embeddings import (
    Embedding,
    EmbeddingProvider,
    HashEmbeddingProvider,
    WireEmbeddingProvider,
)
from tutorkit.gateway.providers import (
    ChatProvider,
    CompletionRequest,
    CompletionResult,
    DecodingParams,
    ScriptedChatProvider,
    WireChatProvider,
    WireConfig,
)
from tutorkit.gateway.templates import PromptTemplate, TemplateRegistry

__all__ = [
    "ChatProvider",
    "CompletionRequest",
    "CompletionResult",
    "DecodingParams",
    "DecodingPolicy",
    "Embedding",
    "EmbeddingProvider",
    "HashEmbeddingProvider",
    "INTERACTION_TAGS",
    "ModelGateway",
    "PromptTemplate",
    "ScriptedChatProvider",
    "TemplateRegistry",
    "WireChatProvider",
    "WireConfig",
    "WireEmbeddingProvider",
]
