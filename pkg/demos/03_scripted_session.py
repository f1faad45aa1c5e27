"""
A complete scripted tutoring session
====================================

The whole engine runs offline against a scripted model provider: every
tool draws its completion from a per-tool queue instead of a live model.
Same queues in, same session out - byte for byte - which is what makes
the engine testable at all.

This demo drives a short difficulty-1 session through its full arc:
opening lesson, routed teaching, a completion verdict, quiz generation,
a quiz with feedback, and the final quiz when the round budget runs out.
"""

from tutorkit.harness import Scenario, compute_stats, format_stats, run_scenario
from tutorkit.variants import Variant

# The learner side of the conversation, one message per round.
learner_script = (
    "What is erosion?",
    "Got it. Quiz me!",
    "1A 2A",
    "What slows erosion down?",
    "How do glaciers fit in?",
    "Tell me about coastlines.",
    "And wind?",
    "What happens to the sediment?",
    "Does this ever stop?",
    "Final thoughts?",
)

# The model side: one queue per tool. The route queue decides which
# interaction tool answers each free message; verdict and generation
# queues drive the backend. Round 3 consumes no route - answering a
# pending quiz always goes to evaluation.
provider_script = {
    "course_design": [
        "- What erosion is\n- Agents of erosion\n  - Water\n  - Wind\n- Preventing erosion",
    ] + [
        "- What erosion is\n- Agents of erosion\n  - Water\n  - Wind\n"
        "- Preventing erosion\n- Erosion in daily life",
    ] * 12,
    "route": ["TEACH", "QUIZ"] + ["TEACH"] * 10,
    "teach": [
        f"Lesson {i}: erosion is the slow transport of worn-down rock."
        for i in range(14)
    ],
    "quiz": ["Time for a quick check."] * 2,
    "evaluation": [
        "Nice work!\n"
        "GRADE 1: A | correct | Water is the big one.\n"
        "GRADE 2: A | correct | Wind erosion is real; lamp erosion is not.",
    ] * 2,
    "objective_completion": ["YES covered well"] + ["NO not yet"] * 12,
    "profile_generation": [
        f"Profile v{i}: the learner is quick and likes examples."
        for i in range(1, 14)
    ],
    "quiz_generation": [
        "STEM: What wears rock away?\nOPTION A: Water\nOPTION B: Paint\nANSWER: A\n"
        "STEM: Which is a kind of erosion?\nOPTION A: Wind erosion\n"
        "OPTION B: Lamp erosion\nANSWER: A",
    ] * 12,
    "final_quiz": [
        "STEM: Erosion mainly does what?\nOPTION A: Moves material\n"
        "OPTION B: Creates rock\nANSWER: A",
    ] * 2,
}

scenario = Scenario(
    topic="Erosion",
    difficulty=1,
    variant=Variant.MAIN,
    learner_script=learner_script,
    provider_script=provider_script,
)

result = run_scenario(scenario)
print(result.transcript)

# The event log is the session's source of truth; the stats module reads
# the same numbers a dashboard would.
print()
print(format_stats(compute_stats(result.events)))
