"""Chat-completion providers: a scripted one for tests, an HTTP wire client."""

from __future__ import annotations

import os
import threading
import time
from collections import deque
from dataclasses import dataclass, field

import httpx

from tutorkit.errors import ProviderError, ScriptExhaustedError

MAX_RETRIES = 2  # retries after the first attempt, so at most 3 attempts total
BACKOFF_BASE_SECONDS = 0.5


@dataclass(frozen=True)
class DecodingParams:
    temperature: float = 0.7
    max_output_tokens: int = 1024

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.max_output_tokens <= 0:
            raise ValueError("max_output_tokens must be positive")


@dataclass(frozen=True)
class CompletionRequest:
    prompt: str
    decoding: DecodingParams
    tool_tag: str

    def __post_init__(self):
        if not self.prompt:
            raise ValueError("prompt must be non-empty")


@dataclass(frozen=True)
class CompletionResult:
    """Completion text plus the call metadata the session log records."""

    text: str
    attempts: int
    latency: float
    timeout: float | None = None


class ChatProvider:
    """Interface: complete(request) -> CompletionResult."""

    def complete(self, request: CompletionRequest) -> CompletionResult:
        raise NotImplementedError


class ScriptedChatProvider(ChatProvider):
    """Replays queued completions keyed by tool tag.

    Queues are keyed by tag rather than prompt content so scripts survive
    prompt-wording edits. An empty queue fails loudly: that always means the
    script and the engine disagree about the call sequence. Latency is
    reported as 0.0 so scripted runs stay byte-identical.
    """

    def __init__(self, script: dict[str, list[str]] | None = None):
        self._queues: dict[str, deque[str]] = {}
        self._lock = threading.Lock()
        for tag, completions in (script or {}).items():
            self.queue(tag, *completions)

    def queue(self, tool_tag: str, *completions: str) -> None:
        with self._lock:
            self._queues.setdefault(tool_tag, deque()).extend(completions)

    def remaining(self, tool_tag: str) -> int:
        with self._lock:
            return len(self._queues.get(tool_tag, ()))

    def complete(self, request: CompletionRequest) -> CompletionResult:
        with self._lock:
            queue = self._queues.get(request.tool_tag)
            if not queue:
                raise ScriptExhaustedError(request.tool_tag)
            text = queue.popleft()
        return CompletionResult(text=text, attempts=1, latency=0.0)


@dataclass
class WireConfig:
    """Where and how to reach a chat-completion HTTP endpoint."""

    base_url: str
    model: str
    token_env: str = "TUTORKIT_API_TOKEN"
    timeout: float = 30.0
    embedding_model: str = ""
    max_retries: int = MAX_RETRIES
    extra_headers: dict[str, str] = field(default_factory=dict)

    def headers(self) -> dict[str, str]:
        headers = dict(self.extra_headers)
        token = os.environ.get(self.token_env, "")
        if token:
            headers["Authorization"] = f"Bearer {token}"
        return headers


class WireChatProvider(ChatProvider):
    """Client for a chat-completion endpoint (messages in, choices out).

    Transport failures are retried with exponential backoff up to the
    configured budget, then surfaced as ProviderError for the orchestrator
    to handle.
    """

    def __init__(self, config: WireConfig, client: httpx.Client | None = None,
                 sleep=time.sleep, clock=time.monotonic):
        self.config = config
        self._client = client or httpx.Client(
            base_url=config.base_url, timeout=config.timeout
        )
        self._sleep = sleep
        self._clock = clock

    def complete(self, request: CompletionRequest) -> CompletionResult:
        payload = {
            "model": self.config.model,
            "messages": [{"role": "user", "content": request.prompt}],
            "temperature": request.decoding.temperature,
            "max_tokens": request.decoding.max_output_tokens,
        }
        started = self._clock()
        last_error: Exception | None = None
        attempts = 0
        for attempt in range(self.config.max_retries + 1):
            attempts = attempt + 1
            try:
                response = self._client.post(
                    "/chat/completions", json=payload, headers=self.config.headers()
                )
                response.raise_for_status()
                text = response.json()["choices"][0]["message"]["content"]
                return CompletionResult(
                    text=text,
                    attempts=attempts,
                    latency=self._clock() - started,
                    timeout=self.config.timeout,
                )
            except (httpx.HTTPError, KeyError, IndexError, ValueError) as exc:
                last_error = exc
                if attempt < self.config.max_retries:
                    self._sleep(BACKOFF_BASE_SECONDS * (2 ** attempt))
        raise ProviderError(
            f"chat completion failed after {attempts} attempts: {last_error}"
        )
