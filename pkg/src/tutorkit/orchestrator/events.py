"""Append-only session event log, JSONL on disk.

The log is the source of truth: state can be rebuilt from it, statistics are
computed from it, and a response is only returned to the caller after its
round's events are on disk. Serialization is key-sorted JSON so identical
runs produce byte-identical files.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator


@dataclass(frozen=True)
class Event:
    round: int
    actor: str
    kind: str
    payload: dict = field(default_factory=dict)
    latency: float = 0.0

    def to_dict(self) -> dict:
        return {
            "round": self.round,
            "actor": self.actor,
            "kind": self.kind,
            "payload": self.payload,
            "latency": self.latency,
        }

    def to_line(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: dict) -> "Event":
        return cls(
            round=int(data["round"]),
            actor=str(data["actor"]),
            kind=str(data["kind"]),
            payload=dict(data.get("payload", {})),
            latency=float(data.get("latency", 0.0)),
        )


class CorruptLogError(Exception):
    """An event log line failed to parse; carries the 1-based line number."""

    def __init__(self, path: str, line_number: int, reason: str):
        super().__init__(f"{path}:{line_number}: {reason}")
        self.path = path
        self.line_number = line_number


class EventLog:
    """In-memory event list with an optional write-through JSONL sink."""

    def __init__(self, path: Path | str | None = None):
        self.path = Path(path) if path is not None else None
        self.events: list[Event] = []
        self._sink: IO[str] | None = None
        if self.path is not None:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self._sink = self.path.open("a", encoding="utf-8")

    def append(self, event: Event) -> None:
        self.events.append(event)
        if self._sink is not None:
            self._sink.write(event.to_line() + "\n")
            self._sink.flush()

    def emit(self, round_index: int, actor: str, kind: str,
             payload: dict | None = None, latency: float = 0.0) -> Event:
        event = Event(round=round_index, actor=actor, kind=kind,
                      payload=payload or {}, latency=latency)
        self.append(event)
        return event

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def by_kind(self, kind: str) -> list[Event]:
        return [event for event in self.events if event.kind == kind]

    def sync(self) -> None:
        """Push appended events all the way to disk (flush + fsync)."""
        if self._sink is not None:
            self._sink.flush()
            os.fsync(self._sink.fileno())

    def close(self) -> None:
        if self._sink is not None:
            self._sink.close()
            self._sink = None


def read_events(path: Path | str) -> list[Event]:
    """Load a JSONL event log; a bad line raises with its line number."""
    path = Path(path)
    events = []
    with path.open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            if not line.endswith("\n"):
                raise CorruptLogError(str(path), number, "truncated final line")
            try:
                data = json.loads(line)
                events.append(Event.from_dict(data))
            except (ValueError, KeyError, TypeError) as err:
                raise CorruptLogError(str(path), number, str(err)) from err
    return events


def write_events(path: Path | str, events: Iterable[Event]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as handle:
        for event in events:
            handle.write(event.to_line() + "\n")
