"""Learning-log statistics: response length, plan shape, update cadences.

Everything here is a pure function of the event log — computing twice
yields identical results, and nothing is consulted beyond the events.

Conventions, stated once so the numbers are reproducible:

- A "response" is a learner-visible system turn from round 1 on. The
  round-0 opening is excluded everywhere; the final assessment turn is a
  response like any other.
- Word count means whitespace-delimited tokens.
- Quiz cadence counts in-course quizzes only (quiz-kind committed rounds);
  the final assessment closes the course rather than punctuating it.
- ``proxy_objectives`` — the average number of distinct plan objective
  titles substring-matched per response — stands in for a judgment a human
  annotator would make, and is named a proxy so nobody mistakes it for one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from statistics import fmean

from tutorkit.memory.plan import CoursePlan, node_count, iter_preorder
from tutorkit.orchestrator.events import Event
from tutorkit.orchestrator.session import transcript_turns


@dataclass(frozen=True)
class RunStats:
    """The per-run statistics a comparison table is built from."""

    session_id: str
    topic: str
    difficulty: int
    variant: str
    rounds: int
    finish_reason: str | None
    avg_response_length: float
    plan_complexity: int
    plan_updates: int
    plan_update_intervals: tuple[int, ...]
    quiz_count: int
    quiz_intervals: tuple[int, ...]
    proxy_objectives: float
    tool_calls: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.plan_complexity < 1:
            raise ValueError("plan complexity is at least the root objective")
        if any(count < 0 for count in self.tool_calls.values()):
            raise ValueError("tool call counts cannot be negative")

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "topic": self.topic,
            "difficulty": self.difficulty,
            "variant": self.variant,
            "rounds": self.rounds,
            "finish_reason": self.finish_reason,
            "avg_response_length": self.avg_response_length,
            "plan_complexity": self.plan_complexity,
            "plan_updates": self.plan_updates,
            "plan_update_intervals": list(self.plan_update_intervals),
            "quiz_count": self.quiz_count,
            "quiz_intervals": list(self.quiz_intervals),
            "proxy_objectives": self.proxy_objectives,
            "tool_calls": dict(self.tool_calls),
        }


def _intervals(rounds: list[int]) -> tuple[int, ...]:
    return tuple(b - a for a, b in zip(rounds, rounds[1:]))


def compute_stats(events: list[Event]) -> RunStats:
    """Derive RunStats from one session's event log."""
    created = next((e for e in events if e.kind == "session_created"), None)
    if created is None:
        raise ValueError("log has no session_created event")

    plan_dict = None
    for event in events:
        if event.kind in ("plan_initialized", "plan_updated"):
            plan_dict = event.payload["plan"]
    if plan_dict is None:
        raise ValueError("log has no course plan")
    final_plan = CoursePlan.from_dict(plan_dict)

    responses = [
        turn for turn in transcript_turns(events)
        if turn["speaker"] == "system" and turn["round"] >= 1
    ]
    lengths = [len(turn["text"].split()) for turn in responses]

    titles = {
        node.title.casefold() for node, _ in iter_preorder(final_plan.root)
    }
    matches = [
        sum(1 for title in titles if title in turn["text"].casefold())
        for turn in responses
    ]

    update_rounds = [e.round for e in events if e.kind == "plan_updated"]
    quiz_rounds = [
        e.payload["round"] for e in events
        if e.kind == "round_committed"
        and e.payload["response"]["kind"] == "quiz"
    ]

    calls: dict[str, int] = {}
    for event in events:
        if event.kind == "model_call":
            calls[event.actor] = calls.get(event.actor, 0) + 1
        elif event.kind == "deterministic_judgment":
            # The evaluation tool ran; it just never needed the model.
            calls["evaluation"] = calls.get("evaluation", 0) + 1

    committed = [e.payload["round"] for e in events if e.kind == "round_committed"]
    finalized = next((e for e in events if e.kind == "finalized"), None)

    return RunStats(
        session_id=created.payload["session_id"],
        topic=created.payload["topic"],
        difficulty=created.payload["difficulty"],
        variant=created.payload["variant"],
        rounds=max(committed, default=0),
        finish_reason=finalized.payload["reason"] if finalized else None,
        avg_response_length=fmean(lengths) if lengths else 0.0,
        plan_complexity=node_count(final_plan.root),
        plan_updates=len(update_rounds),
        plan_update_intervals=_intervals(update_rounds),
        quiz_count=len(quiz_rounds),
        quiz_intervals=_intervals(quiz_rounds),
        proxy_objectives=fmean(matches) if matches else 0.0,
        tool_calls={tag: calls[tag] for tag in sorted(calls)},
    )


def format_stats(stats: RunStats) -> str:
    """One run's statistics as a readable block."""
    finish = stats.finish_reason or "still active"
    lines = [
        f"session {stats.session_id}: {stats.topic} "
        f"(difficulty {stats.difficulty}, {stats.variant})",
        f"rounds: {stats.rounds} ({finish})",
        f"avg response length: {stats.avg_response_length:.2f} words",
        f"plan complexity: {stats.plan_complexity} objectives",
        f"plan updates: {stats.plan_updates}"
        f" (intervals: {_render_list(stats.plan_update_intervals)})",
        f"quizzes: {stats.quiz_count}"
        f" (intervals: {_render_list(stats.quiz_intervals)})",
        f"objectives per response (proxy): {stats.proxy_objectives:.2f}",
        "tool calls: " + (
            ", ".join(f"{tag}={count}" for tag, count in stats.tool_calls.items())
            or "none"
        ),
    ]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# variant comparison


def _render_list(values: tuple[int, ...]) -> str:
    return ", ".join(str(v) for v in values) if values else "-"


def _rows_for(stats_list: list[RunStats]) -> list[tuple[str, list, list]]:
    """Build (metric, values, deltas) rows; deltas are against the first run.

    Interval lists are shown verbatim; their deltas are carried by the
    companion mean rows, where a single number is meaningful.
    """

    def scalar(name: str, values: list, decimals: int | None = None):
        base = values[0]
        deltas = [v - base for v in values[1:]]
        if decimals is not None:
            cells = [f"{v:.{decimals}f}" for v in values]
            delta_cells = [f"{d:+.{decimals}f}" for d in deltas]
        else:
            cells = [str(v) for v in values]
            delta_cells = [f"{d:+d}" for d in deltas]
        return (name, cells, delta_cells)

    def interval_mean(name: str, lists: list[tuple[int, ...]]):
        means = [fmean(v) if v else None for v in lists]
        cells = ["-" if m is None else f"{m:.2f}" for m in means]
        base = means[0]
        delta_cells = [
            "" if (m is None or base is None) else f"{m - base:+.2f}"
            for m in means[1:]
        ]
        return (name, cells, delta_cells)

    rows = [
        scalar("rounds", [s.rounds for s in stats_list]),
        scalar("avg_response_length",
               [s.avg_response_length for s in stats_list], decimals=2),
        scalar("plan_complexity", [s.plan_complexity for s in stats_list]),
        scalar("plan_updates", [s.plan_updates for s in stats_list]),
        ("plan_update_intervals",
         [_render_list(s.plan_update_intervals) for s in stats_list], []),
        interval_mean("plan_update_interval_mean",
                      [s.plan_update_intervals for s in stats_list]),
        scalar("quiz_count", [s.quiz_count for s in stats_list]),
        ("quiz_intervals",
         [_render_list(s.quiz_intervals) for s in stats_list], []),
        interval_mean("quiz_interval_mean",
                      [s.quiz_intervals for s in stats_list]),
        scalar("proxy_objectives",
               [s.proxy_objectives for s in stats_list], decimals=2),
    ]
    tags = sorted({tag for s in stats_list for tag in s.tool_calls})
    for tag in tags:
        rows.append(scalar(
            f"calls[{tag}]", [s.tool_calls.get(tag, 0) for s in stats_list]
        ))
    return rows


def compare_variants(stats_list: list[RunStats], fmt: str = "text") -> str:
    """Side-by-side table of runs of the same topic, one column per variant.

    Deltas are relative to the first run given (by convention the full
    system). ``fmt`` is "text" for an aligned table or "tsv" for a
    tab-delimited one with the delta columns split out.
    """
    if len(stats_list) < 2:
        raise ValueError("need at least two runs to compare")
    topics = {s.topic for s in stats_list}
    if len(topics) > 1:
        raise ValueError(
            "runs cover different topics: " + ", ".join(sorted(topics))
        )
    if fmt not in ("text", "tsv"):
        raise ValueError(f"unknown format {fmt!r}")

    names = [s.variant for s in stats_list]
    rows = _rows_for(stats_list)

    if fmt == "tsv":
        header = ["metric", *names, *(f"delta:{n}" for n in names[1:])]
        lines = ["\t".join(header)]
        for name, cells, deltas in rows:
            padded = deltas + [""] * (len(names) - 1 - len(deltas))
            lines.append("\t".join([name, *cells, *padded]))
        return "\n".join(lines) + "\n"

    table = [["metric", *names]]
    for name, cells, deltas in rows:
        merged = [cells[0]]
        for index, cell in enumerate(cells[1:]):
            delta = deltas[index] if index < len(deltas) and deltas[index] else None
            merged.append(f"{cell} ({delta})" if delta else cell)
        table.append([name, *merged])
    widths = [
        max(len(row[col]) for row in table) for col in range(len(table[0]))
    ]
    lines = [
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in table
    ]
    return "\n".join(lines) + "\n"
