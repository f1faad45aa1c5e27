from tutorkit.memory.history import (
    HistoryRound,
    LearningHistory,
    MemoryRecord,
    SHORT_TERM_ROUNDS,
    SHORT_TERM_ROUNDS_EXPANDED,
    Speaker,
)
from tutorkit.memory.outline import (
    assign_fresh_ids,
    parse_outline,
    plan_to_outline,
)
from tutorkit.memory.plan import (
    CoursePlan,
    MAX_DEPTH,
    ObjectiveNode,
    Status,
    apply_plan_update,
    build_plan,
    iter_preorder,
    mark_completed,
    title_path,
    next_uncompleted,
    normalize_title,
    removed_node_ids,
    tree_depth,
)
from tutorkit.memory.profile import LearningProfile
from tutorkit.memory.quiz import QuizItem, QuizPool, quiz_for_objectives

__all__ = [
    "CoursePlan",
    "HistoryRound",
    "LearningHistory",
    "LearningProfile",
    "MAX_DEPTH",
    "MemoryRecord",
    "ObjectiveNode",
    "QuizItem",
    "QuizPool",
    "SHORT_TERM_ROUNDS",
    "SHORT_TERM_ROUNDS_EXPANDED",
    "Speaker",
    "Status",
    "apply_plan_update",
    "assign_fresh_ids",
    "build_plan",
    "iter_preorder",
    "mark_completed",
    "title_path",
    "next_uncompleted",
    "normalize_title",
    "parse_outline",
    "plan_to_outline",
    "quiz_for_objectives",
    "removed_node_ids",
    "tree_depth",
]
