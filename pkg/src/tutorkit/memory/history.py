"""Dual-horizon learning history.

Short term is a bounded FIFO of the most recent conversation rounds kept in
plain text. Long term is an append-only vectorized store of every utterance,
searched exhaustively by cosine similarity (stores are session-sized, so no
index is warranted).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from enum import Enum

import numpy as np

from tutorkit.errors import RoundOrderError
from tutorkit.gateway.embeddings import Embedding, EmbeddingProvider

SHORT_TERM_ROUNDS = 5
SHORT_TERM_ROUNDS_EXPANDED = 10


class Speaker(str, Enum):
    LEARNER = "learner"
    SYSTEM = "system"


@dataclass(frozen=True)
class MemoryRecord:
    round: int
    speaker: Speaker
    text: str
    vector: Embedding

    def to_dict(self) -> dict:
        return {
            "round": self.round,
            "speaker": self.speaker.value,
            "text": self.text,
            "vector": self.vector.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MemoryRecord":
        return cls(
            round=data["round"],
            speaker=Speaker(data["speaker"]),
            text=data["text"],
            vector=Embedding(data["vector"]),
        )


@dataclass(frozen=True)
class HistoryRound:
    round: int
    learner_text: str
    system_text: str


class LearningHistory:
    """Recent rounds in full plus an embedded record of everything said."""

    def __init__(self, embedder: EmbeddingProvider, capacity: int = SHORT_TERM_ROUNDS):
        if capacity < 1:
            raise ValueError("short-term capacity must be >= 1")
        self.capacity = capacity
        self._embedder = embedder
        self.short_term: deque[HistoryRound] = deque(maxlen=capacity)
        self.long_term: list[MemoryRecord] = []
        self._last_appended = 0

    @property
    def last_round(self) -> int:
        return self._last_appended

    def append_round(self, learner_text: str, system_text: str, round_index: int) -> None:
        """Record one completed round on both horizons.

        The short-term FIFO evicts its oldest round past capacity; long term
        gains one embedded record per utterance, learner first.
        """
        if round_index != self._last_appended + 1:
            raise RoundOrderError(
                f"expected round {self._last_appended + 1}, got {round_index}"
            )
        self.short_term.append(HistoryRound(round_index, learner_text, system_text))
        self.long_term.append(MemoryRecord(
            round_index, Speaker.LEARNER, learner_text, self._embedder.embed(learner_text)
        ))
        self.long_term.append(MemoryRecord(
            round_index, Speaker.SYSTEM, system_text, self._embedder.embed(system_text)
        ))
        self._last_appended = round_index

    def retrieve_relevant(self, query: str, k: int) -> list[MemoryRecord]:
        """Top-k long-term records by cosine similarity to the query.

        Sorted by non-increasing similarity; ties go to the smaller round
        index, then to the learner's utterance before the system's.
        """
        if k < 1:
            raise ValueError("k must be >= 1")
        if not self.long_term:
            return []
        query_vec = self._embedder.embed(query)
        ranked = sorted(
            self.long_term,
            key=lambda record: (
                -float(np.dot(record.vector.values, query_vec.values)),
                record.round,
                0 if record.speaker is Speaker.LEARNER else 1,
            ),
        )
        return ranked[:k]

    def transcript(self) -> str:
        """Short-term rounds rendered for prompts."""
        lines = []
        for entry in self.short_term:
            lines.append(f"[round {entry.round}] Learner: {entry.learner_text}")
            lines.append(f"[round {entry.round}] Tutor: {entry.system_text}")
        return "\n".join(lines)

    def dump_jsonl(self) -> str:
        """Long-term store as JSONL, vectors inline."""
        return "\n".join(json.dumps(rec.to_dict()) for rec in self.long_term)

    def load_jsonl(self, payload: str) -> None:
        """Rebuild both horizons from a JSONL dump (replaces current content)."""
        records = [MemoryRecord.from_dict(json.loads(line))
                   for line in payload.splitlines() if line.strip()]
        self.long_term = records
        self.short_term.clear()
        rounds: dict[int, dict[str, str]] = {}
        for rec in records:
            rounds.setdefault(rec.round, {})[rec.speaker.value] = rec.text
        last = 0
        for idx in sorted(rounds):
            entry = rounds[idx]
            self.short_term.append(HistoryRound(
                idx, entry.get("learner", ""), entry.get("system", "")
            ))
            last = idx
        self._last_appended = last
