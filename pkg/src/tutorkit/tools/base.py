"""Shared structures for the prompted tools: context, results, rendering."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

from tutorkit.gateway.core import ModelGateway
from tutorkit.gateway.providers import CompletionResult
from tutorkit.memory.history import LearningHistory, MemoryRecord, Speaker
from tutorkit.memory.outline import plan_to_outline
from tutorkit.memory.plan import CoursePlan, next_uncompleted, title_path
from tutorkit.memory.profile import LearningProfile
from tutorkit.memory.quiz import QuizItem, QuizPool
from tutorkit.tools import catalog
from tutorkit.variants import Variant, VariantTraits, traits_for

logger = logging.getLogger(__name__)

# How many history records each retrieval-backed prompt receives.
RETRIEVAL_K = 5
FINAL_QUIZ_RETRIEVAL_K = 20

# How many questions one quiz-generation call asks the model for.
QUIZ_ITEMS_REQUESTED = 2
# Upper bound on questions shown in one quiz turn.
QUIZ_TURN_LIMIT = 5

REASK_SUFFIX = (
    "\n\nYour previous reply could not be used. Answer again and follow the "
    "required format exactly."
)


class ResponseKind(str, Enum):
    TEACH = "teach"
    ANSWER = "answer"
    QUIZ = "quiz"
    EVALUATION = "evaluation"


@dataclass(frozen=True)
class Judgment:
    """Per-question outcome of grading one quiz answer."""

    question: int
    chosen: str | None
    correct: bool
    feedback: str

    def to_dict(self) -> dict:
        return {
            "question": self.question,
            "chosen": self.chosen,
            "correct": self.correct,
            "feedback": self.feedback,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Judgment":
        return cls(
            question=int(data["question"]),
            chosen=data.get("chosen"),
            correct=bool(data["correct"]),
            feedback=str(data.get("feedback", "")),
        )


@dataclass(frozen=True)
class CompletionVerdict:
    """Outcome of asking whether the current objective is finished."""

    completed: bool
    reason: str
    parsed: bool = True


@dataclass
class SystemResponse:
    """One system turn as shown to the learner.

    ``quiz_items`` is populated for quiz and final-quiz turns, ``judgments``
    for evaluation turns. ``deterministic`` marks turns produced without a
    model call; ``unstructured`` marks evaluation text that could not be
    parsed into judgments.
    """

    kind: ResponseKind
    text: str
    quiz_items: tuple[QuizItem, ...] = ()
    judgments: tuple[Judgment, ...] = ()
    deterministic: bool = False
    unstructured: bool = False

    def to_dict(self) -> dict:
        payload: dict = {"kind": self.kind.value, "text": self.text}
        if self.quiz_items:
            payload["quiz_items"] = [item.to_dict() for item in self.quiz_items]
        if self.judgments:
            payload["judgments"] = [j.to_dict() for j in self.judgments]
        if self.deterministic:
            payload["deterministic"] = True
        if self.unstructured:
            payload["unstructured"] = True
        return payload

    @classmethod
    def from_dict(cls, data: dict) -> "SystemResponse":
        return cls(
            kind=ResponseKind(data["kind"]),
            text=str(data["text"]),
            quiz_items=tuple(
                QuizItem.from_dict(item) for item in data.get("quiz_items", ())
            ),
            judgments=tuple(
                Judgment.from_dict(j) for j in data.get("judgments", ())
            ),
            deterministic=bool(data.get("deterministic", False)),
            unstructured=bool(data.get("unstructured", False)),
        )


# Called after every completed model call:
# (tool_tag, template_id, prompt, result) — result carries text/latency/attempts.
CallRecorder = Callable[[str, str, str, "CompletionResult"], None]


def _no_record(tool_tag, template_id, prompt, result) -> None:
    return None


@dataclass
class ToolContext:
    """Everything a tool needs to build its prompt and interpret the reply."""

    gateway: ModelGateway
    variant: Variant
    topic: str
    difficulty: int
    plan: CoursePlan
    history: LearningHistory
    profile: LearningProfile
    pool: QuizPool
    round_index: int = 0
    rounds_since_quiz: int = 0
    record_call: CallRecorder = _no_record

    @property
    def traits(self) -> VariantTraits:
        return traits_for(self.variant)


def call_model(ctx: ToolContext, template_id: str, bindings: dict[str, str],
               tool_tag: str) -> str:
    """Render one template, run it through the gateway, record the exchange."""
    prompt = ctx.gateway.render(template_id, bindings)
    result = ctx.gateway.complete(prompt, tool_tag)
    ctx.record_call(tool_tag, template_id, prompt, result)
    return result.text


def call_with_reask(ctx: ToolContext, template_id: str,
                    bindings: dict[str, str], tool_tag: str, parse):
    """Call the model, parse; on a parse failure ask once more.

    Returns ``(parsed_value, raw_text)`` where ``parsed_value`` is None if
    both attempts failed to parse. The retry keeps the same prompt plus an
    explicit format reminder.
    """
    prompt = ctx.gateway.render(template_id, bindings)
    result = ctx.gateway.complete(prompt, tool_tag)
    ctx.record_call(tool_tag, template_id, prompt, result)
    parsed = parse(result.text)
    if parsed is not None:
        return parsed, result.text

    logger.debug("reasking %s after unparseable reply", tool_tag)
    retry_prompt = prompt + REASK_SUFFIX
    result = ctx.gateway.complete(retry_prompt, tool_tag)
    ctx.record_call(tool_tag, template_id, retry_prompt, result)
    return parse(result.text), result.text


# ---------------------------------------------------------------------------
# Prompt block rendering


def history_block(ctx: ToolContext) -> str:
    transcript = ctx.history.transcript()
    return transcript if transcript else catalog.EMPTY_HISTORY


def profile_block(ctx: ToolContext) -> str:
    return ctx.profile.text if ctx.profile.text else catalog.EMPTY_PROFILE


def plan_block(ctx: ToolContext) -> str:
    return plan_to_outline(ctx.plan, include_status=True)


def title_path_of(ctx: ToolContext, node_id: str) -> str:
    """One node rendered as a "root > ... > leaf" title path."""
    return " > ".join(title_path(ctx.plan, node_id))


def objective_block(ctx: ToolContext) -> str:
    """The current objective as a "root > ... > leaf" title path."""
    node = next_uncompleted(ctx.plan)
    if node is None:
        return "(all objectives are complete)"
    return title_path_of(ctx, node.id)


def retrieved_block(records: Sequence[MemoryRecord]) -> str:
    if not records:
        return catalog.EMPTY_RETRIEVED
    lines = []
    for record in records:
        who = "learner" if record.speaker is Speaker.LEARNER else "tutor"
        lines.append(f"- (round {record.round}, {who}) {record.text}")
    return "\n".join(lines)


def retrieve(ctx: ToolContext, query: str, k: int = RETRIEVAL_K) -> str:
    """Long-term lookup rendered for a prompt; empty marker when disabled."""
    if not ctx.traits.long_term_retrieval or not query.strip():
        return catalog.EMPTY_RETRIEVED
    return retrieved_block(ctx.history.retrieve_relevant(query, k))


def pool_block(ctx: ToolContext, items: Sequence[QuizItem]) -> str:
    if not items:
        return "(no questions on file)"
    lines = []
    for item in items:
        title = ctx.plan.find(item.objective_id).title
        lines.append(f"- [{title}] {item.stem}")
    return "\n".join(lines)


def format_quiz(items: Sequence[QuizItem]) -> str:
    """Numbered multiple-choice block shown to the learner (no answer keys)."""
    lines = []
    for number, item in enumerate(items, start=1):
        lines.append(f"Question {number}: {item.stem}")
        for label, text in item.options:
            lines.append(f"  {label}. {text}")
    return "\n".join(lines)


def format_quiz_with_answers(items: Sequence[QuizItem]) -> str:
    """Quiz block for the grader, correct answers included."""
    lines = []
    for number, item in enumerate(items, start=1):
        lines.append(f"Question {number}: {item.stem}")
        for label, text in item.options:
            lines.append(f"  {label}. {text}")
        lines.append(f"  Correct answer: {item.answer_key}")
    return "\n".join(lines)
