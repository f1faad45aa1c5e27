"""
Comparing the system variants side by side
==========================================

Three configurations of the same engine:

* ``main`` - reflection after every round (completion verdicts, scheduled
  profile updates) driving reaction (course redesign, quiz generation).
* ``no_reflection`` - no verdicts and no profile; redesign and quiz
  generation run on the profile schedule instead, and the short-term
  window doubles to compensate.
* ``interaction_only`` - the four learner-facing tools and nothing else;
  the plan is pinned at its initial form for the whole session.

One scenario, three runs, one table. Because everything is scripted and
deterministic, the differences in the columns are exactly the behavioral
differences between the variants.
"""

from tutorkit.harness import (
    Scenario,
    compare_variants,
    compute_stats,
    run_scenario,
)
from tutorkit.variants import Variant

OUTLINE = (
    "- What erosion is\n"
    "- Agents of erosion\n"
    "  - Water\n"
    "  - Wind\n"
    "- Preventing erosion"
)
MCQ = (
    "STEM: What wears rock away?\nOPTION A: Water\nOPTION B: Paint\nANSWER: A\n"
    "STEM: Which is a kind of erosion?\nOPTION A: Wind erosion\n"
    "OPTION B: Lamp erosion\nANSWER: A"
)
GRADES = "Good!\n" + "\n".join(
    f"GRADE {n}: A | correct | Right." for n in range(1, 6)
)


def provider_script():
    """Fresh queues for one full difficulty-2 session (15 rounds)."""
    return {
        "course_design": [OUTLINE] * 18,
        "route": ["TEACH", "QUIZ", "TEACH"] * 6,
        "teach": [f"Lesson {i} on erosion, tailored to the learner." for i in range(22)],
        "answer": [f"Answer {i}: it moves sediment." for i in range(18)],
        "quiz": ["Pop quiz!"] * 8,
        "evaluation": [GRADES] * 8,
        "objective_completion": (["YES covered"] + ["NO more needed"] * 2) * 6,
        "profile_generation": [f"Profile v{i}: steady progress." for i in range(1, 19)],
        "quiz_generation": [MCQ] * 18,
        "final_quiz": [MCQ] * 2,
    }


messages = tuple(f"Learner message {i}" for i in range(1, 16))

stats = []
for variant in (Variant.MAIN, Variant.NO_REFLECTION, Variant.INTERACTION_ONLY):
    scenario = Scenario(
        topic="Erosion",
        difficulty=2,
        variant=variant,
        learner_script=messages,
        provider_script=provider_script(),
    )
    result = run_scenario(scenario)
    stats.append(compute_stats(result.events))
    print(f"{variant.value}: {result.state.round} rounds, "
          f"{result.state.finish_reason}")

# Deltas are taken against the first column (main). The pinned variant
# shows zero plan updates by construction; the scheduled variant updates
# the plan on its timer rather than on profile changes.
print()
print(compare_variants(stats))
