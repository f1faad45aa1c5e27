"""Learning profile: a rolling short paragraph of learner progress."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class LearningProfile:
    text: str = ""
    version: int = 0
    updated_at_round: int = 0

    def updated(self, text: str, round_index: int) -> "LearningProfile":
        """Next version of the profile; versions advance by exactly one."""
        if not text.strip():
            raise ValueError("profile text must be non-empty")
        return LearningProfile(text=text, version=self.version + 1,
                               updated_at_round=round_index)

    def to_dict(self) -> dict:
        return {"text": self.text, "version": self.version,
                "updated_at_round": self.updated_at_round}

    @classmethod
    def from_dict(cls, data: dict) -> "LearningProfile":
        return cls(text=data["text"], version=data["version"],
                   updated_at_round=data["updated_at_round"])
