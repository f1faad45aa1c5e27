"""Backend reflection tools: completion verdicts and profile rewrites.

These distill the dialogue into state. They never touch the learner-visible
turn and never mutate memory themselves — the session engine applies what
they return.
"""

from __future__ import annotations

import logging

from tutorkit.tools import parsing
from tutorkit.tools.base import (
    CompletionVerdict,
    ToolContext,
    call_with_reask,
    call_model,
    history_block,
    objective_block,
    profile_block,
)

logger = logging.getLogger(__name__)

FALLBACK_PROFILE_TEXT = "No notable learner signals have been recorded yet."


def judge_completion(ctx: ToolContext) -> CompletionVerdict:
    """Has the current objective been covered well enough to move on?

    Expects a leading YES/NO token. One re-ask on an off-format reply, then
    a conservative NO so instruction simply continues.
    """
    verdict, text = call_with_reask(
        ctx,
        "objective_completion",
        {"objective": objective_block(ctx), "history": history_block(ctx)},
        "objective_completion",
        parsing.parse_yes_no,
    )
    if verdict is None:
        logger.debug("completion verdict unparseable twice; treating as NO")
        return CompletionVerdict(completed=False, reason=text.strip(), parsed=False)
    return CompletionVerdict(completed=verdict, reason=text.strip())


def generate_profile(ctx: ToolContext) -> str:
    """Rewrite the learning profile paragraph from recent history.

    Returns the new text; an effectively empty completion is replaced with a
    fixed placeholder so the profile invariant (non-empty after first
    generation) always holds.
    """
    text = call_model(
        ctx,
        "profile_generation",
        {"history": history_block(ctx), "profile": profile_block(ctx)},
        "profile_generation",
    ).strip()
    if not text:
        logger.warning("profile completion was empty; using placeholder text")
        return FALLBACK_PROFILE_TEXT
    return text
