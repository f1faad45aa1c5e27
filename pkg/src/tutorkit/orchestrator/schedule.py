"""Difficulty-keyed control constants: profile interval and round budget."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Schedule:
    """Pacing for one difficulty level."""

    profile_interval: int
    max_rounds: int


# Per difficulty level 1..5: how often the learning profile is regenerated
# (in rounds) and how many rounds a session may run before the final quiz.
SCHEDULE_TABLE = {
    1: Schedule(profile_interval=1, max_rounds=10),
    2: Schedule(profile_interval=1, max_rounds=15),
    3: Schedule(profile_interval=2, max_rounds=20),
    4: Schedule(profile_interval=3, max_rounds=25),
    5: Schedule(profile_interval=4, max_rounds=30),
}


def schedule_for(difficulty: int) -> Schedule:
    try:
        return SCHEDULE_TABLE[difficulty]
    except KeyError:
        raise ValueError(
            f"difficulty must be between 1 and 5, got {difficulty!r}"
        ) from None
