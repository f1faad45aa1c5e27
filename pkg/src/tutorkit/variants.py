"""System variants: the full engine and its two reduced configurations."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from tutorkit.memory.history import SHORT_TERM_ROUNDS, SHORT_TERM_ROUNDS_EXPANDED


class Variant(str, Enum):
    """Which parts of the engine are active for a session."""

    MAIN = "main"
    NO_REFLECTION = "no_reflection"
    INTERACTION_ONLY = "interaction_only"


@dataclass(frozen=True)
class VariantTraits:
    """Switches that the session engine consults, derived from the variant.

    ``short_term_rounds``: recent-conversation window, in rounds.
    ``reflects``: run the per-round reflection pass (completion verdicts,
        interval-driven profile updates and plan redesigns, quiz generation).
    ``scheduled_reaction``: with reflection off, still refresh the plan and
        quiz pool on the profile interval, driven by raw history.
    ``long_term_retrieval``: allow lookups in the append-only history store.
    ``plan_pinned``: freeze the course plan at its first revision.
    """

    short_term_rounds: int
    reflects: bool
    scheduled_reaction: bool
    long_term_retrieval: bool
    plan_pinned: bool


_TRAITS = {
    Variant.MAIN: VariantTraits(
        short_term_rounds=SHORT_TERM_ROUNDS,
        reflects=True,
        scheduled_reaction=False,
        long_term_retrieval=True,
        plan_pinned=False,
    ),
    Variant.NO_REFLECTION: VariantTraits(
        short_term_rounds=SHORT_TERM_ROUNDS_EXPANDED,
        reflects=False,
        scheduled_reaction=True,
        long_term_retrieval=True,
        plan_pinned=False,
    ),
    Variant.INTERACTION_ONLY: VariantTraits(
        short_term_rounds=SHORT_TERM_ROUNDS,
        reflects=False,
        scheduled_reaction=False,
        long_term_retrieval=False,
        plan_pinned=True,
    ),
}


def traits_for(variant: Variant) -> VariantTraits:
    return _TRAITS[variant]
