"""Backend reaction tools: course (re)design, quiz generation, final quiz.

Course plans travel as indented outlines and quizzes as STEM/OPTION/ANSWER
blocks; each call gets one re-ask when the reply cannot be parsed, after
which the documented fallback applies.
"""

from __future__ import annotations

import logging

from tutorkit.errors import (
    ObjectiveNotCompletedError,
    OutlineParseError,
    PlanDepthError,
)
from tutorkit.memory.outline import parse_outline
from tutorkit.memory.plan import (
    MAX_DEPTH,
    ObjectiveNode,
    Status,
    normalize_title,
    tree_depth,
)
from tutorkit.memory.quiz import QuizItem
from tutorkit.tools import catalog, parsing
from tutorkit.tools.base import (
    FINAL_QUIZ_RETRIEVAL_K,
    QUIZ_ITEMS_REQUESTED,
    QUIZ_TURN_LIMIT,
    REASK_SUFFIX,
    ResponseKind,
    SystemResponse,
    ToolContext,
    format_quiz,
    history_block,
    plan_block,
    profile_block,
    retrieved_block,
    title_path_of,
)

logger = logging.getLogger(__name__)

# Accepted question count from one quiz-generation call.
QUIZ_ITEMS_ACCEPTED_MAX = 3

FINAL_QUIZ_LEADIN = "The course is wrapping up — here is your final quiz."


def _proposal_from_outline(text: str, main_objective: str) -> ObjectiveNode:
    """Parse an outline completion into a proposed plan tree.

    A single top-level item titled like the main objective is taken as the
    root; any other forest is wrapped under a fresh root carrying the main
    objective, which costs one depth level. Depth is checked after wrapping.
    """
    forest = parse_outline(text)
    if len(forest) == 1 and (
        normalize_title(forest[0].title) == normalize_title(main_objective)
    ):
        root = forest[0]
    else:
        root = ObjectiveNode(
            id="p0", title=main_objective, status=Status.PENDING, children=forest
        )
    depth = tree_depth(root)
    if depth > MAX_DEPTH:
        raise PlanDepthError(
            f"proposed plan is {depth} layers deep; the bound is {MAX_DEPTH}"
        )
    return root


def design_course(ctx: ToolContext, initial: bool) -> ObjectiveNode:
    """Produce a proposed plan tree for the session's topic.

    Initial designs see only the topic and difficulty text. Redesigns also
    see the current plan, plus the profile (with reflection on) or the raw
    recent history (reflection off). Unusable replies are re-asked once and
    then raised.
    """
    difficulty_text = catalog.COURSE_DESIGN_DIFFICULTY[ctx.difficulty]
    if initial:
        template_id = "course_design_initial"
        bindings = {"difficulty_text": difficulty_text, "topic": ctx.topic}
    elif ctx.traits.reflects:
        template_id = "course_design_update"
        bindings = {
            "difficulty_text": difficulty_text,
            "topic": ctx.topic,
            "plan": plan_block(ctx),
            "profile": profile_block(ctx),
        }
    else:
        template_id = "course_design_update_ablation"
        bindings = {
            "difficulty_text": difficulty_text,
            "topic": ctx.topic,
            "plan": plan_block(ctx),
            "history": history_block(ctx),
        }

    prompt = ctx.gateway.render(template_id, bindings)
    result = ctx.gateway.complete(prompt, "course_design")
    ctx.record_call("course_design", template_id, prompt, result)
    try:
        return _proposal_from_outline(result.text, ctx.topic)
    except (OutlineParseError, PlanDepthError) as first_failure:
        logger.debug("course design reply rejected (%s); reasking", first_failure)
        retry_prompt = prompt + REASK_SUFFIX
        result = ctx.gateway.complete(retry_prompt, "course_design")
        ctx.record_call("course_design", template_id, retry_prompt, result)
        return _proposal_from_outline(result.text, ctx.topic)


def _items_from_questions(questions, objective_id: str, source_round: int,
                          limit: int) -> list[QuizItem]:
    items = []
    for question in questions[:limit]:
        items.append(
            QuizItem(
                objective_id=objective_id,
                stem=question.stem,
                options=tuple(question.options),
                answer_key=question.answer,
                source_round=source_round,
            )
        )
    return items


def generate_quiz_items(ctx: ToolContext, objective: ObjectiveNode) -> list[QuizItem]:
    """Write fresh multiple-choice questions for one objective.

    Retrieval is keyed by the objective title; up to three parsed questions
    are kept. Two unusable replies in a row yield an empty list — the pool
    just does not grow this round.

    With completion verdicts in play, questions are only written for
    objectives that earned one; the scheduled-reaction variant has no
    verdicts and may target any node.
    """
    if ctx.traits.reflects and objective.status is not Status.COMPLETED:
        raise ObjectiveNotCompletedError(
            f"objective {objective.id!r} has no completion verdict yet"
        )
    if ctx.traits.long_term_retrieval:
        records = ctx.history.retrieve_relevant(objective.title, k=5)
    else:
        records = []
    bindings = {
        "objective": title_path_of(ctx, objective.id),
        "retrieved": retrieved_block(records),
        "count": str(QUIZ_ITEMS_REQUESTED),
    }
    prompt = ctx.gateway.render("quiz_generation", bindings)
    result = ctx.gateway.complete(prompt, "quiz_generation")
    ctx.record_call("quiz_generation", "quiz_generation", prompt, result)
    questions = parsing.parse_questions(result.text)
    if questions is None:
        retry_prompt = prompt + REASK_SUFFIX
        result = ctx.gateway.complete(retry_prompt, "quiz_generation")
        ctx.record_call("quiz_generation", "quiz_generation", retry_prompt, result)
        questions = parsing.parse_questions(result.text)
    if questions is None:
        logger.warning("quiz generation unparseable twice; pool unchanged")
        return []
    return _items_from_questions(
        questions, objective.id, ctx.round_index, QUIZ_ITEMS_ACCEPTED_MAX
    )


def generate_final_quiz(ctx: ToolContext) -> SystemResponse:
    """Build the terminal assessment once the session is ending.

    The prompt draws on the most relevant long-term records — or, when the
    long-term store is disabled, on the course plan outline. If even the
    re-ask cannot be parsed, the raw completion is shown as-is so the
    session still closes with an assessment.
    """
    if ctx.traits.long_term_retrieval:
        records = ctx.history.retrieve_relevant(
            ctx.topic, k=FINAL_QUIZ_RETRIEVAL_K
        )
        template_id = "final_quiz"
        bindings = {
            "topic": ctx.topic,
            "retrieved": retrieved_block(records),
            "count": str(QUIZ_TURN_LIMIT),
        }
    else:
        template_id = "final_quiz_plan"
        bindings = {
            "topic": ctx.topic,
            "plan": plan_block(ctx),
            "count": str(QUIZ_TURN_LIMIT),
        }

    prompt = ctx.gateway.render(template_id, bindings)
    result = ctx.gateway.complete(prompt, "final_quiz")
    ctx.record_call("final_quiz", template_id, prompt, result)
    questions = parsing.parse_questions(result.text)
    if questions is None:
        retry_prompt = prompt + REASK_SUFFIX
        result = ctx.gateway.complete(retry_prompt, "final_quiz")
        ctx.record_call("final_quiz", template_id, retry_prompt, result)
        questions = parsing.parse_questions(result.text)
    if questions is None:
        logger.warning("final quiz unparseable twice; echoing raw text")
        return SystemResponse(
            kind=ResponseKind.QUIZ,
            text=FINAL_QUIZ_LEADIN + "\n\n" + result.text.strip(),
            unstructured=True,
        )

    items = _items_from_questions(
        questions, ctx.plan.root.id, ctx.round_index, QUIZ_TURN_LIMIT
    )
    return SystemResponse(
        kind=ResponseKind.QUIZ,
        text=FINAL_QUIZ_LEADIN + "\n\n" + format_quiz(items),
        quiz_items=tuple(items),
    )
