"""Learner-facing tools: routing, teach, answer, quiz, evaluation.

Each function builds its prompt from the memory stores the tool is entitled
to, calls the gateway once (twice on a parse retry), and returns a typed
result. Nothing here mutates session state.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from tutorkit.errors import (
    EmptyQuizPoolError,
    NoCurrentObjectiveError,
    NoPendingQuizError,
)
from tutorkit.memory.plan import Status, iter_preorder, next_uncompleted
from tutorkit.memory.quiz import QuizItem
from tutorkit.tools import catalog, parsing
from tutorkit.tools.base import (
    Judgment,
    QUIZ_TURN_LIMIT,
    ResponseKind,
    SystemResponse,
    ToolContext,
    call_model,
    call_with_reask,
    format_quiz,
    format_quiz_with_answers,
    history_block,
    objective_block,
    plan_block,
    pool_block,
    profile_block,
    retrieve,
    retrieved_block,
)
from tutorkit.variants import Variant

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RouteDecision:
    """Meta-agent choice of interaction tool for one learner message."""

    tool: str  # "teach" | "answer" | "quiz"
    rationale: str
    parsed: bool = True


def route_message(ctx: ToolContext, message: str) -> RouteDecision:
    """Ask the meta agent which interaction tool should take this message.

    An off-format reply falls back to teach immediately: the router's whole
    job is picking a lane, and teach is always a safe lane.
    """
    text = call_model(
        ctx,
        "meta_route",
        {
            "message": message,
            "history": history_block(ctx),
            "objective": objective_block(ctx),
            "rounds_since_quiz": str(ctx.rounds_since_quiz),
        },
        "route",
    )
    parsed = parsing.parse_route(text)
    if parsed is None:
        logger.debug("route reply unparseable; falling back to teach")
        return RouteDecision(tool="teach", rationale=text.strip(), parsed=False)
    return RouteDecision(tool=parsed.lower(), rationale=text.strip())


def teach(ctx: ToolContext) -> SystemResponse:
    """Instruct on the current objective (main) or the next plan item (ablations)."""
    if ctx.variant is Variant.MAIN:
        if next_uncompleted(ctx.plan) is None:
            raise NoCurrentObjectiveError("every objective is already completed")
        text = call_model(
            ctx,
            "teach",
            {
                "difficulty_text": catalog.TEACH_DIFFICULTY[ctx.difficulty],
                "objective": objective_block(ctx),
                "profile": profile_block(ctx),
                "history": history_block(ctx),
            },
            "teach",
        )
    else:
        text = call_model(
            ctx,
            "teach_ablation",
            {
                "difficulty_text": catalog.TEACH_DIFFICULTY[ctx.difficulty],
                "plan": plan_block(ctx),
                "history": history_block(ctx),
            },
            "teach",
        )
    return SystemResponse(kind=ResponseKind.TEACH, text=text)


def answer(ctx: ToolContext, question: str) -> SystemResponse:
    """Answer the learner's question, grounded in recent and retrieved history."""
    if not question.strip():
        raise ValueError("question must be non-empty")
    if ctx.traits.long_term_retrieval:
        text = call_model(
            ctx,
            "answer",
            {
                "history": history_block(ctx),
                "retrieved": retrieve(ctx, question),
                "question": question,
            },
            "answer",
        )
    else:
        text = call_model(
            ctx,
            "answer_recent_only",
            {"history": history_block(ctx), "question": question},
            "answer",
        )
    return SystemResponse(kind=ResponseKind.ANSWER, text=text)


def _eligible_quiz_objectives(ctx: ToolContext) -> list[str]:
    """Objective ids a quiz may draw from, in plan pre-order.

    With reflection on, eligibility means completed-and-keyed. Without
    completion verdicts there are no completed nodes, so any keyed node
    is fair game.
    """
    keyed = ctx.pool.keyed_ids()
    ids = []
    for node, _ in iter_preorder(ctx.plan.root):
        if node.id not in keyed:
            continue
        if ctx.traits.reflects and node.status is not Status.COMPLETED:
            continue
        ids.append(node.id)
    return ids


def select_quiz_items(ctx: ToolContext) -> list[QuizItem]:
    """Most representative pool questions: newest per objective, capped."""
    selected = []
    for objective_id in _eligible_quiz_objectives(ctx):
        entries = ctx.pool.items_for(objective_id)
        newest = max(
            range(len(entries)), key=lambda i: (entries[i].source_round, i)
        )
        selected.append(entries[newest])
        if len(selected) == QUIZ_TURN_LIMIT:
            break
    return selected


def make_quiz(ctx: ToolContext) -> SystemResponse:
    """Assemble a review quiz from the pool with a model-written lead-in."""
    items = select_quiz_items(ctx)
    if not items:
        raise EmptyQuizPoolError("no completed objective has quiz questions yet")
    if ctx.traits.reflects:
        intro = call_model(
            ctx,
            "quiz",
            {"pool": pool_block(ctx, items), "profile": profile_block(ctx)},
            "quiz",
        )
    else:
        intro = call_model(
            ctx,
            "quiz_ablation",
            {"pool": pool_block(ctx, items), "history": history_block(ctx)},
            "quiz",
        )
    text = intro.strip() + "\n\n" + format_quiz(items)
    return SystemResponse(
        kind=ResponseKind.QUIZ, text=text, quiz_items=tuple(items)
    )


def _retrieve_for_stems(ctx: ToolContext, items) -> str:
    """Merge per-stem retrievals, deduplicated, first-seen order."""
    if not ctx.traits.long_term_retrieval:
        return catalog.EMPTY_RETRIEVED
    merged = []
    seen = set()
    for item in items:
        for record in ctx.history.retrieve_relevant(item.stem, k=5):
            key = (record.round, record.speaker)
            if key not in seen:
                seen.add(key)
                merged.append(record)
    return retrieved_block(merged)


def evaluate(ctx: ToolContext, learner_answer: str,
             pending_quiz: list[QuizItem]) -> SystemResponse:
    """Grade a quiz answer into per-question judgments plus feedback text."""
    if not pending_quiz:
        raise NoPendingQuizError("no quiz is awaiting an answer")

    if not learner_answer.strip():
        judgments = tuple(
            Judgment(
                question=number,
                chosen=None,
                correct=False,
                feedback=f"No answer was given; the correct answer was "
                         f"{item.answer_key}.",
            )
            for number, item in enumerate(pending_quiz, start=1)
        )
        text = (
            "It looks like no answers came through, so this one counts as all "
            "incorrect. Review the correct answers above and we will revisit "
            "the material."
        )
        return SystemResponse(
            kind=ResponseKind.EVALUATION,
            text=text,
            judgments=judgments,
            deterministic=True,
        )

    bindings = {
        "quiz": format_quiz_with_answers(pending_quiz),
        "answer": learner_answer,
        "history": history_block(ctx),
        "retrieved": _retrieve_for_stems(ctx, pending_quiz),
    }
    judgments, text = call_with_reask(
        ctx,
        "evaluation",
        bindings,
        "evaluation",
        lambda reply: parsing.parse_grades(reply, expected=len(pending_quiz)),
    )
    if judgments is None:
        logger.warning("evaluation reply unparseable twice; echoing text")
        return SystemResponse(
            kind=ResponseKind.EVALUATION, text=text, unstructured=True
        )
    return SystemResponse(
        kind=ResponseKind.EVALUATION, text=text, judgments=tuple(judgments)
    )
