"""Service configuration: a JSON file plus an environment variable for secrets.

The file holds everything that is safe to commit — provider choice, decoding
parameters, endpoints, ports. The API token never appears in it: the wire
provider reads the token from the environment variable named by
``wire.token_env`` at request time.
"""

from __future__ import annotations

import json

from dataclasses import dataclass, field
from pathlib import Path

import httpx

from tutorkit.gateway.core import DecodingPolicy, ModelGateway
from tutorkit.gateway.embeddings import HashEmbeddingProvider, WireEmbeddingProvider
from tutorkit.gateway.providers import ScriptedChatProvider, WireChatProvider, WireConfig
from tutorkit.tools.catalog import build_registry

PROVIDER_SCRIPTED = "scripted"
PROVIDER_WIRE = "wire"

DEFAULT_PORT = 8000
DEFAULT_DATA_DIR = "tutorkit-data"
DEFAULT_EMBEDDING_DIM = 32


@dataclass
class ServiceConfig:
    data_dir: Path = Path(DEFAULT_DATA_DIR)
    port: int = DEFAULT_PORT
    provider: str = PROVIDER_SCRIPTED
    embedding_dim: int = DEFAULT_EMBEDDING_DIM
    decoding: DecodingPolicy = field(default_factory=DecodingPolicy)
    wire: WireConfig | None = None
    # Completion queues for the scripted provider, shared across sessions.
    # Only meaningful for offline demos and tests.
    script: dict[str, list[str]] = field(default_factory=dict)

    def __post_init__(self):
        if self.provider not in (PROVIDER_SCRIPTED, PROVIDER_WIRE):
            raise ValueError(
                f"provider must be {PROVIDER_SCRIPTED!r} or {PROVIDER_WIRE!r}"
            )
        if self.provider == PROVIDER_WIRE and self.wire is None:
            raise ValueError("wire provider selected but no wire settings given")
        if not 1 <= self.port <= 65535:
            raise ValueError("port must be in 1..65535")
        if self.embedding_dim < 1:
            raise ValueError("embedding dim must be positive")

    @classmethod
    def from_dict(cls, data: dict) -> "ServiceConfig":
        decoding_cfg = data.get("decoding", {})
        decoding = DecodingPolicy(
            interaction_temperature=decoding_cfg.get(
                "interaction_temperature",
                DecodingPolicy.interaction_temperature,
            ),
            backend_temperature=decoding_cfg.get(
                "backend_temperature", DecodingPolicy.backend_temperature
            ),
            max_output_tokens=decoding_cfg.get(
                "max_output_tokens", DecodingPolicy.max_output_tokens
            ),
        )
        wire = None
        if "wire" in data:
            wire_cfg = dict(data["wire"])
            wire = WireConfig(
                base_url=wire_cfg["base_url"],
                model=wire_cfg["model"],
                token_env=wire_cfg.get("token_env", WireConfig.token_env),
                timeout=wire_cfg.get("timeout", WireConfig.timeout),
                embedding_model=wire_cfg.get("embedding_model", ""),
            )
        return cls(
            data_dir=Path(data.get("data_dir", DEFAULT_DATA_DIR)),
            port=data.get("port", DEFAULT_PORT),
            provider=data.get("provider", PROVIDER_SCRIPTED),
            embedding_dim=data.get("embedding", {}).get(
                "dim", DEFAULT_EMBEDDING_DIM
            ),
            decoding=decoding,
            wire=wire,
            script={
                tag: list(lines) for tag, lines in data.get("script", {}).items()
            },
        )

    @classmethod
    def load(cls, path: str | Path) -> "ServiceConfig":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def build_gateway(config: ServiceConfig) -> ModelGateway:
    """Assemble the gateway the whole service shares."""
    if config.provider == PROVIDER_WIRE:
        wire = config.wire
        chat = WireChatProvider(wire)
        embedder = WireEmbeddingProvider(
            client=httpx.Client(
                base_url=wire.base_url,
                timeout=wire.timeout,
                headers=wire.headers(),
            ),
            model=wire.embedding_model or wire.model,
            dim=config.embedding_dim,
        )
    else:
        chat = ScriptedChatProvider(config.script)
        embedder = HashEmbeddingProvider(dim=config.embedding_dim)
    return ModelGateway(
        chat=chat,
        embedder=embedder,
        templates=build_registry(),
        decoding=config.decoding,
    )
