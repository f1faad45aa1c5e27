"""Durable session storage: per-session event logs, recovery, quarantine.

Each session owns one directory holding its append-only event log (the
source of truth) and a long-term memory dump (persisted vectors, so
recovery does not have to re-embed the whole conversation). A response is
returned to the caller only after the round's events are fsynced.

Recovery rebuilds every session found on disk: from the latest snapshot
plus the event tail when one exists, from a full replay otherwise. A log
that cannot be read or replayed quarantines that one session — the
directory is moved aside and flagged — and the rest recover normally.
"""

from __future__ import annotations

import json
import os
import shutil
import threading
import uuid

from dataclasses import dataclass
from pathlib import Path

from tutorkit.errors import TutorError, UnknownSessionError
from tutorkit.gateway.core import ModelGateway
from tutorkit.gateway.embeddings import Embedding, EmbeddingProvider
from tutorkit.memory.history import LearningHistory, MemoryRecord
from tutorkit.orchestrator.events import (
    CorruptLogError,
    Event,
    EventLog,
    read_events,
)
from tutorkit.orchestrator.session import (
    SessionEngine,
    SessionState,
    apply_event,
    derive_session_id,
    replay_events,
    start_session,
    transcript_turns,
)
from tutorkit.tools.base import SystemResponse
from tutorkit.variants import Variant

SESSIONS_DIRNAME = "sessions"
QUARANTINE_DIRNAME = "quarantine"
EVENTS_FILENAME = "events.jsonl"
LONGTERM_FILENAME = "longterm.jsonl"


@dataclass(frozen=True)
class SessionSummary:
    """Read-only mirror of a session's externally visible state."""

    session_id: str
    topic: str
    difficulty: int
    variant: str
    round: int
    phase: str
    finish_reason: str | None
    plan: dict

    @classmethod
    def from_state(cls, state: SessionState) -> "SessionSummary":
        return cls(
            session_id=state.session_id,
            topic=state.topic,
            difficulty=state.difficulty,
            variant=state.variant.value,
            round=state.round,
            phase=state.phase,
            finish_reason=state.finish_reason,
            plan=state.plan.to_dict(),
        )

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "topic": self.topic,
            "difficulty": self.difficulty,
            "variant": self.variant,
            "round": self.round,
            "phase": self.phase,
            "finish_reason": self.finish_reason,
            "plan": self.plan,
        }


@dataclass(frozen=True)
class QuarantinedSession:
    """A session set aside during recovery, with the reason it failed."""

    session_id: str
    path: str
    reason: str


class _CachedVectorEmbedder(EmbeddingProvider):
    """Serves texts seen before the crash from their persisted vectors.

    Anything not in the cache falls through to the real embedder, so
    recovery works even when the vector dump is missing or behind.
    """

    def __init__(self, inner: EmbeddingProvider, cache: dict[str, Embedding]):
        self._inner = inner
        self._cache = cache
        self.dim = inner.dim

    def embed(self, text: str) -> Embedding:
        hit = self._cache.get(text)
        return hit if hit is not None else self._inner.embed(text)


class SessionStore:
    """All live sessions plus their on-disk form."""

    def __init__(self, data_dir: str | Path, gateway: ModelGateway):
        self.data_dir = Path(data_dir)
        self.gateway = gateway
        self.quarantined: list[QuarantinedSession] = []
        self._engines: dict[str, SessionEngine] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._longterm_written: dict[str, int] = {}
        self._registry_lock = threading.Lock()

    # ------------------------------------------------------------------
    # paths

    def _session_dir(self, session_id: str) -> Path:
        return self.data_dir / SESSIONS_DIRNAME / session_id

    # ------------------------------------------------------------------
    # lifecycle

    def create(self, topic: str, difficulty: int,
               variant: Variant | str) -> SessionSummary:
        """Start and persist a new session; its opening turn is on disk
        before this returns."""
        variant = Variant(variant)
        session_id = derive_session_id(
            topic, difficulty, variant, salt=uuid.uuid4().hex
        )
        session_dir = self._session_dir(session_id)
        session_dir.mkdir(parents=True, exist_ok=True)
        log = EventLog(session_dir / EVENTS_FILENAME)
        try:
            engine = start_session(
                topic=topic,
                difficulty=difficulty,
                variant=variant,
                gateway=self.gateway,
                log=log,
                session_id=session_id,
            )
        except BaseException:
            # The partial log (session_created without plan_initialized)
            # stays on disk as a record of the failed boot; recovery knows
            # to skip it.
            log.close()
            raise
        log.sync()
        self._register(engine)
        return SessionSummary.from_state(engine.state)

    def message(self, session_id: str, text: str) -> SystemResponse:
        engine = self._engine(session_id)
        with self._locks[session_id]:
            response = engine.handle_user_message(text)
            self._persist_longterm(session_id, engine.state.history)
            engine.log.sync()
        return response

    # ------------------------------------------------------------------
    # read views

    def summary(self, session_id: str) -> SessionSummary:
        return SessionSummary.from_state(self._engine(session_id).state)

    def plan(self, session_id: str) -> dict:
        return self._engine(session_id).state.plan.to_dict()

    def transcript(self, session_id: str) -> dict:
        engine = self._engine(session_id)
        state = engine.state
        return {
            "session_id": state.session_id,
            "topic": state.topic,
            "phase": state.phase,
            "finish_reason": state.finish_reason,
            "turns": transcript_turns(engine.log.events),
        }

    def session_ids(self) -> list[str]:
        with self._registry_lock:
            return sorted(self._engines)

    def close(self) -> None:
        with self._registry_lock:
            for engine in self._engines.values():
                engine.log.close()

    # ------------------------------------------------------------------
    # recovery

    def recover(self) -> list[SessionSummary]:
        """Rebuild every session found under the data directory.

        Unreadable or unreplayable logs quarantine their session (moved to
        the quarantine directory and flagged); sessions whose boot never
        completed are skipped in place.
        """
        sessions_root = self.data_dir / SESSIONS_DIRNAME
        summaries = []
        if not sessions_root.is_dir():
            return summaries
        for session_dir in sorted(sessions_root.iterdir()):
            events_path = session_dir / EVENTS_FILENAME
            if not session_dir.is_dir() or not events_path.is_file():
                continue
            try:
                events = read_events(events_path)
                if not any(e.kind == "plan_initialized" for e in events):
                    continue  # boot failed before a plan existed
                state = self._rebuild(events, session_dir)
            except (CorruptLogError, TutorError, ValueError, KeyError) as err:
                self._quarantine(session_dir, str(err))
                continue
            log = EventLog(events_path)
            log.events.extend(events)
            engine = SessionEngine(state, self.gateway, log)
            self._rewrite_longterm(session_dir, state.history)
            self._register(engine)
            summaries.append(SessionSummary.from_state(state))
        return summaries

    def _rebuild(self, events: list[Event], session_dir: Path) -> SessionState:
        embedder = self.gateway.embedder
        cache = self._vector_cache(session_dir / LONGTERM_FILENAME)
        if cache:
            embedder = _CachedVectorEmbedder(embedder, cache)
        snapshot = None
        for event in events:
            if event.kind == "snapshot":
                snapshot = event
        if snapshot is None:
            return replay_events(events, embedder)
        state = SessionState.from_snapshot(snapshot.payload["state"], embedder)
        for event in events[snapshot.payload["event_index"] + 1:]:
            apply_event(state, event)
        return state

    @staticmethod
    def _vector_cache(path: Path) -> dict[str, Embedding]:
        if not path.is_file():
            return {}
        cache: dict[str, Embedding] = {}
        try:
            for line in path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                record = MemoryRecord.from_dict(json.loads(line))
                cache[record.text] = record.vector
        except (ValueError, KeyError, TypeError):
            return {}  # recovery re-embeds instead
        return cache

    def _quarantine(self, session_dir: Path, reason: str) -> None:
        target_root = self.data_dir / QUARANTINE_DIRNAME
        target_root.mkdir(parents=True, exist_ok=True)
        target = target_root / session_dir.name
        suffix = 1
        while target.exists():
            target = target_root / f"{session_dir.name}.{suffix}"
            suffix += 1
        shutil.move(str(session_dir), str(target))
        self.quarantined.append(QuarantinedSession(
            session_id=session_dir.name, path=str(target), reason=reason
        ))

    # ------------------------------------------------------------------
    # internals

    def _engine(self, session_id: str) -> SessionEngine:
        with self._registry_lock:
            engine = self._engines.get(session_id)
        if engine is None:
            raise UnknownSessionError(f"no session with id {session_id!r}")
        return engine

    def _register(self, engine: SessionEngine) -> None:
        session_id = engine.state.session_id
        with self._registry_lock:
            self._engines[session_id] = engine
            self._locks[session_id] = threading.Lock()
            self._longterm_written[session_id] = len(
                engine.state.history.long_term
            )

    def _persist_longterm(self, session_id: str,
                          history: LearningHistory) -> None:
        written = self._longterm_written.get(session_id, 0)
        records = history.long_term
        if len(records) <= written:
            return
        path = self._session_dir(session_id) / LONGTERM_FILENAME
        with path.open("a", encoding="utf-8") as handle:
            for record in records[written:]:
                handle.write(json.dumps(record.to_dict()) + "\n")
            handle.flush()
            os.fsync(handle.fileno())
        self._longterm_written[session_id] = len(records)

    def _rewrite_longterm(self, session_dir: Path,
                          history: LearningHistory) -> None:
        """Bring the vector dump exactly in line with recovered memory."""
        path = session_dir / LONGTERM_FILENAME
        dump = history.dump_jsonl()
        path.write_text(dump + "\n" if dump else "", encoding="utf-8")
