"""Shared fixtures: scripted gateways and ready-made session choreography."""

from __future__ import annotations

import pytest

from tutorkit.gateway.core import ModelGateway
from tutorkit.gateway.embeddings import HashEmbeddingProvider
from tutorkit.gateway.providers import ScriptedChatProvider
from tutorkit.memory.history import LearningHistory
from tutorkit.memory.plan import CoursePlan, ObjectiveNode, Status
from tutorkit.memory.profile import LearningProfile
from tutorkit.memory.quiz import QuizPool
from tutorkit.orchestrator.schedule import schedule_for
from tutorkit.tools.base import ToolContext
from tutorkit.tools.catalog import build_registry
from tutorkit.variants import Variant

# Two well-formed multiple-choice questions in the wire format.
MCQ_TWO = (
    "STEM: What wears rock away?\n"
    "OPTION A: Water\n"
    "OPTION B: Paint\n"
    "ANSWER: A\n"
    "STEM: Which is a kind of erosion?\n"
    "OPTION A: Wind erosion\n"
    "OPTION B: Lamp erosion\n"
    "ANSWER: A\n"
)

OUTLINE_FIVE = (
    "- What erosion is\n"
    "- Agents of erosion\n"
    "  - Water\n"
    "  - Wind\n"
    "- Preventing erosion"
)

OUTLINE_SIX = OUTLINE_FIVE + "\n- Erosion in daily life"

# Grades questions 1..5; extra lines are dropped for shorter quizzes, so the
# same completion text evaluates any quiz the engine can produce.
EVALUATION_ANY = "Good effort!\n" + "\n".join(
    f"GRADE {n}: A | correct | Question {n} was answered well." for n in range(1, 6)
)


def scripted_gateway(script: dict[str, list[str]] | None = None,
                     dim: int = 16) -> ModelGateway:
    return ModelGateway(
        chat=ScriptedChatProvider(script or {}),
        embedder=HashEmbeddingProvider(dim=dim),
        templates=build_registry(),
    )


def full_session_script(difficulty: int, variant: Variant | str,
                        routes: list[str] | None = None,
                        yes_rounds: set[int] | None = None,
                        rounds: int | None = None) -> dict[str, list[str]]:
    """Completion queues that comfortably cover one full-length session.

    ``routes`` are consumed only on non-evaluation rounds; ``yes_rounds``
    is advisory only in that the verdict queue answers YES for those
    verdict draws and NO otherwise (verdicts are drawn per round in order,
    skipping rounds where every objective is already complete). Queues are
    overprovisioned — leftovers are harmless, underflow never is.
    """
    variant = Variant(variant)
    schedule = schedule_for(difficulty)
    total = rounds if rounds is not None else schedule.max_rounds
    yes_rounds = yes_rounds or set()
    verdicts = [
        "YES that objective is covered" if r in yes_rounds else "NO keep going"
        for r in range(1, total + 1)
    ]
    return {
        "course_design": [OUTLINE_FIVE] + [OUTLINE_SIX] * (total + 1),
        "route": (routes or ["TEACH"] * total) + ["TEACH"] * 4,
        "teach": [
            f"Lesson {i}: erosion wears the land down grain by grain."
            for i in range(total + 6)
        ],
        "answer": [f"Answer {i}: erosion moves sediment." for i in range(total + 2)],
        "quiz": [f"Quick check {i}!" for i in range(total + 2)],
        "evaluation": [EVALUATION_ANY] * (total + 2),
        "objective_completion": verdicts + ["NO keep going"] * 4,
        "profile_generation": [
            f"Profile after round {i}: learner steady." for i in range(1, total + 4)
        ],
        "quiz_generation": [MCQ_TWO] * (total + 2),
        "final_quiz": [MCQ_TWO] * 2,
    }


def make_plan(statuses: dict[str, str] | None = None) -> CoursePlan:
    """A three-node plan (root + two children) with optional status overrides."""
    statuses = statuses or {}

    def status(node_id: str) -> Status:
        return Status(statuses.get(node_id, "pending"))

    return CoursePlan(
        root=ObjectiveNode(
            id="n0", title="Erosion", status=status("n0"),
            children=[
                ObjectiveNode(id="n1", title="What erosion is",
                              status=status("n1")),
                ObjectiveNode(id="n2", title="Agents of erosion",
                              status=status("n2")),
            ],
        ),
        difficulty=2,
    )


def make_ctx(script: dict[str, list[str]] | None = None,
             variant: Variant = Variant.MAIN,
             plan: CoursePlan | None = None,
             difficulty: int = 2,
             round_index: int = 1,
             profile_text: str = "",
             dim: int = 16) -> ToolContext:
    gateway = scripted_gateway(script, dim=dim)
    return ToolContext(
        gateway=gateway,
        variant=variant,
        topic="Erosion",
        difficulty=difficulty,
        plan=plan if plan is not None else make_plan(),
        history=LearningHistory(gateway.embedder, capacity=5),
        profile=LearningProfile(text=profile_text,
                                version=1 if profile_text else 0),
        pool=QuizPool(),
        round_index=round_index,
    )


@pytest.fixture
def ctx_factory():
    return make_ctx


@pytest.fixture
def plan_factory():
    return make_plan
