"""The prompted tools: four learner-facing, four backend, plus the router."""

from tutorkit.tools.base import (
    CompletionVerdict,
    FINAL_QUIZ_RETRIEVAL_K,
    Judgment,
    QUIZ_ITEMS_REQUESTED,
    QUIZ_TURN_LIMIT,
    RETRIEVAL_K,
    ResponseKind,
    SystemResponse,
    ToolContext,
)
from tutorkit.tools.catalog import (
    COURSE_DESIGN_DIFFICULTY,
    MEMORY_SECTIONS,
    TEACH_DIFFICULTY,
    TOOL_INPUT_SECTIONS,
    build_registry,
    memory_sections_in,
)
from tutorkit.tools.interaction import (
    RouteDecision,
    answer,
    evaluate,
    make_quiz,
    route_message,
    select_quiz_items,
    teach,
)
from tutorkit.tools.reaction import (
    design_course,
    generate_final_quiz,
    generate_quiz_items,
)
from tutorkit.tools.reflection import generate_profile, judge_completion

__all__ = [
    "COURSE_DESIGN_DIFFICULTY",
    "CompletionVerdict",
    "FINAL_QUIZ_RETRIEVAL_K",
    "Judgment",
    "MEMORY_SECTIONS",
    "QUIZ_ITEMS_REQUESTED",
    "QUIZ_TURN_LIMIT",
    "RETRIEVAL_K",
    "ResponseKind",
    "RouteDecision",
    "SystemResponse",
    "TEACH_DIFFICULTY",
    "TOOL_INPUT_SECTIONS",
    "ToolContext",
    "answer",
    "build_registry",
    "design_course",
    "evaluate",
    "generate_final_quiz",
    "generate_profile",
    "generate_quiz_items",
    "judge_completion",
    "make_quiz",
    "memory_sections_in",
    "route_message",
    "select_quiz_items",
    "teach",
]
