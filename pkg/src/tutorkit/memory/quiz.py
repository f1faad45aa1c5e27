"""Quiz pool: per-objective multiple-choice questions, append-only."""

from __future__ import annotations

from dataclasses import dataclass, field

from tutorkit.errors import UnknownNodeError
from tutorkit.memory.plan import CoursePlan


@dataclass(frozen=True)
class QuizItem:
    objective_id: str
    stem: str
    options: tuple[tuple[str, str], ...]  # (label, text) pairs in display order
    answer_key: str
    source_round: int

    def __post_init__(self):
        labels = [label for label, _ in self.options]
        texts = [text for _, text in self.options]
        if not 2 <= len(self.options) <= 5:
            raise ValueError("a quiz item needs 2 to 5 options")
        if len(set(labels)) != len(labels) or len(set(texts)) != len(texts):
            raise ValueError("option labels and texts must be distinct")
        if self.answer_key not in labels:
            raise ValueError(f"answer key {self.answer_key!r} is not an option label")
        if not self.stem.strip():
            raise ValueError("quiz stem must be non-empty")

    def to_dict(self) -> dict:
        return {
            "objective_id": self.objective_id,
            "stem": self.stem,
            "options": [{"label": label, "text": text} for label, text in self.options],
            "answer_key": self.answer_key,
            "source_round": self.source_round,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "QuizItem":
        return cls(
            objective_id=data["objective_id"],
            stem=data["stem"],
            options=tuple((opt["label"], opt["text"]) for opt in data["options"]),
            answer_key=data["answer_key"],
            source_round=data["source_round"],
        )


@dataclass
class QuizPool:
    """Mapping from objective id to its generated questions, in insertion order."""

    entries: dict[str, list[QuizItem]] = field(default_factory=dict)

    def extend(self, objective_id: str, items: list[QuizItem]) -> None:
        self.entries.setdefault(objective_id, []).extend(items)

    def items_for(self, objective_id: str) -> list[QuizItem]:
        return list(self.entries.get(objective_id, ()))

    def keyed_ids(self) -> set[str]:
        return {oid for oid, items in self.entries.items() if items}

    def to_dict(self) -> dict:
        return {oid: [item.to_dict() for item in items]
                for oid, items in self.entries.items()}

    @classmethod
    def from_dict(cls, data: dict) -> "QuizPool":
        return cls(entries={
            oid: [QuizItem.from_dict(item) for item in items]
            for oid, items in data.items()
        })


def quiz_for_objectives(pool: QuizPool, plan: CoursePlan,
                        objective_ids: list[str]) -> list[QuizItem]:
    """Concatenate pool entries for the given objectives in plan pre-order.

    Objectives without entries contribute nothing; an id missing from the
    plan is an error regardless of pool content.
    """
    requested = set(objective_ids)
    order = plan.preorder_ids()
    known = set(order)
    for oid in objective_ids:
        if oid not in known:
            raise UnknownNodeError(f"objective id {oid!r} is not in the plan")
    result: list[QuizItem] = []
    for oid in order:
        if oid in requested:
            result.extend(pool.items_for(oid))
    return result
