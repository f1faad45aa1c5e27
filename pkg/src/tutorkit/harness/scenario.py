"""Scripted scenarios: a learner persona plus canned model completions.

A scenario stands in for a human participant: the learner's messages are
fixed up front, and every model call is answered from per-tool completion
queues. Running one is therefore fully deterministic — the same scenario
always yields byte-identical event logs and transcripts.
"""

from __future__ import annotations

import json

from dataclasses import dataclass, field
from pathlib import Path

from tutorkit.gateway.core import DecodingPolicy, ModelGateway
from tutorkit.gateway.embeddings import HashEmbeddingProvider
from tutorkit.gateway.providers import ScriptedChatProvider
from tutorkit.orchestrator.events import Event, EventLog
from tutorkit.orchestrator.schedule import schedule_for
from tutorkit.orchestrator.session import (
    PHASE_ACTIVE,
    SessionState,
    derive_session_id,
    render_transcript,
    start_session,
)
from tutorkit.tools.catalog import build_registry
from tutorkit.variants import Variant

EVENTS_FILENAME = "events.jsonl"
TRANSCRIPT_FILENAME = "transcript.txt"


@dataclass(frozen=True)
class Scenario:
    """One reproducible run: who learns what, and what the model says."""

    topic: str
    difficulty: int
    variant: Variant
    learner_script: tuple[str, ...]
    provider_script: dict[str, list[str]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.topic.strip():
            raise ValueError("topic must be non-empty")
        max_rounds = schedule_for(self.difficulty).max_rounds
        if len(self.learner_script) > max_rounds:
            raise ValueError(
                f"learner script has {len(self.learner_script)} messages; "
                f"difficulty {self.difficulty} allows at most {max_rounds} rounds"
            )
        for index, message in enumerate(self.learner_script, start=1):
            if not isinstance(message, str) or not message.strip():
                raise ValueError(f"learner message {index} must be non-empty text")

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        try:
            topic = data["topic"]
            difficulty = data["difficulty"]
            variant = Variant(data["variant"])
            learner_script = tuple(data["learner_script"])
        except KeyError as exc:
            raise ValueError(f"scenario is missing field {exc.args[0]!r}") from exc
        provider_script = data.get("provider_script", {})
        if not isinstance(provider_script, dict):
            raise ValueError("provider_script must map tool tags to completion lists")
        script: dict[str, list[str]] = {}
        for tag, completions in provider_script.items():
            if isinstance(completions, str) or not all(
                isinstance(text, str) for text in completions
            ):
                raise ValueError(
                    f"provider_script[{tag!r}] must be a list of completions"
                )
            script[tag] = list(completions)
        return cls(
            topic=topic,
            difficulty=difficulty,
            variant=variant,
            learner_script=learner_script,
            provider_script=script,
        )

    @classmethod
    def from_json(cls, text: str) -> "Scenario":
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path: str | Path) -> "Scenario":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def to_dict(self) -> dict:
        return {
            "topic": self.topic,
            "difficulty": self.difficulty,
            "variant": self.variant.value,
            "learner_script": list(self.learner_script),
            "provider_script": {
                tag: list(completions)
                for tag, completions in self.provider_script.items()
            },
        }


@dataclass(frozen=True)
class RunResult:
    """What a scenario run produced, in memory and on disk."""

    state: SessionState
    events: list[Event]
    transcript: str
    events_path: Path | None = None
    transcript_path: Path | None = None


def build_scripted_gateway(provider_script: dict[str, list[str]],
                           embedding_dim: int = 32) -> ModelGateway:
    """Gateway wired for offline runs: scripted chat, hash embeddings."""
    return ModelGateway(
        chat=ScriptedChatProvider(provider_script),
        embedder=HashEmbeddingProvider(dim=embedding_dim),
        templates=build_registry(),
        decoding=DecodingPolicy(),
    )


def run_scenario(scenario: Scenario, out_dir: str | Path | None = None) -> RunResult:
    """Play a scenario to the end and (optionally) write its artifacts.

    Learner messages are fed in order until the script is spent or the
    session finalizes on its own; unconsumed messages are simply unused.
    A starved completion queue propagates as ScriptExhaustedError naming
    the tool tag — that always means the script disagrees with the engine
    about the call sequence, and the run is not salvageable.
    """
    events_path = None
    transcript_path = None
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        events_path = out_dir / EVENTS_FILENAME
        # The log sink appends; a rerun into the same directory must replace
        # the previous run's artifacts, not concatenate with them.
        events_path.unlink(missing_ok=True)

    gateway = build_scripted_gateway(scenario.provider_script)
    log = EventLog(events_path)
    try:
        engine = start_session(
            topic=scenario.topic,
            difficulty=scenario.difficulty,
            variant=scenario.variant,
            gateway=gateway,
            log=log,
            session_id=derive_session_id(
                scenario.topic, scenario.difficulty, scenario.variant
            ),
        )
        for message in scenario.learner_script:
            if engine.state.phase != PHASE_ACTIVE:
                break
            engine.handle_user_message(message)
    finally:
        log.close()

    transcript = render_transcript(log.events)
    if out_dir is not None:
        transcript_path = out_dir / TRANSCRIPT_FILENAME
        transcript_path.write_text(transcript, encoding="utf-8")
    return RunResult(
        state=engine.state,
        events=list(log.events),
        transcript=transcript,
        events_path=events_path,
        transcript_path=transcript_path,
    )
