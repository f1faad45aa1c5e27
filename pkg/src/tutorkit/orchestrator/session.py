"""The session engine: one learner's tutoring loop from creation to final quiz.

Control flow per accepted message: forced evaluation (when a quiz is
pending) or meta-agent routing to teach/answer/quiz; commit the round to
history and the event log; run the variant's backend pass (reflection with
its triggered reactions, or the scheduled reaction); then finalize when all
objectives are complete or the round budget is spent.

Backend failures are contained — they are logged and never block the reply
already produced — with one exception: a scripted-queue underflow always
propagates, because it means the test script and the engine disagree.
"""

from __future__ import annotations

import hashlib
import logging

from dataclasses import dataclass, field

from tutorkit.errors import (
    EmptyQuizPoolError,
    ScriptExhaustedError,
    SessionFinishedError,
    TutorError,
)
from tutorkit.gateway.core import ModelGateway
from tutorkit.gateway.embeddings import EmbeddingProvider
from tutorkit.memory.history import LearningHistory
from tutorkit.memory.outline import assign_fresh_ids
from tutorkit.memory.plan import (
    CoursePlan,
    ObjectiveNode,
    Status,
    apply_plan_update,
    iter_preorder,
    mark_completed,
    next_uncompleted,
    removed_node_ids,
)
from tutorkit.memory.profile import LearningProfile
from tutorkit.memory.quiz import QuizItem, QuizPool
from tutorkit.orchestrator.events import Event, EventLog
from tutorkit.orchestrator.schedule import Schedule, schedule_for
from tutorkit.tools import interaction, reaction, reflection
from tutorkit.tools.base import ResponseKind, SystemResponse, ToolContext
from tutorkit.variants import Variant, VariantTraits, traits_for

logger = logging.getLogger(__name__)

PHASE_ACTIVE = "active"
PHASE_FINISHED = "finished"

REASON_ALL_COMPLETED = "all_objectives_completed"
REASON_MAX_ROUNDS = "max_rounds_reached"

SNAPSHOT_EVERY_ROUNDS = 10


def derive_session_id(topic: str, difficulty: int, variant: Variant,
                      salt: str = "") -> str:
    """Stable id from session parameters, so scripted runs are repeatable."""
    digest = hashlib.sha256(
        f"{topic}\x1f{difficulty}\x1f{variant.value}\x1f{salt}".encode("utf-8")
    ).hexdigest()
    return f"s-{digest[:12]}"


@dataclass
class SessionState:
    """Everything one session knows, exclusive to its engine loop."""

    session_id: str
    topic: str
    difficulty: int
    variant: Variant
    plan: CoursePlan
    profile: LearningProfile
    history: LearningHistory
    pool: QuizPool
    round: int = 0
    phase: str = PHASE_ACTIVE
    pending_quiz: tuple[QuizItem, ...] | None = None
    last_quiz_round: int | None = None
    finish_reason: str | None = None
    final_response: SystemResponse | None = None

    @property
    def schedule(self) -> Schedule:
        return schedule_for(self.difficulty)

    @property
    def traits(self) -> VariantTraits:
        return traits_for(self.variant)

    def to_snapshot(self) -> dict:
        """Deterministic full-state dict for snapshots and deep comparison.

        Long-term vectors are omitted: they are a pure function of the
        stored text under a given embedder, and the durable vector copy
        lives in the long-term JSONL dump.
        """
        return {
            "session_id": self.session_id,
            "topic": self.topic,
            "difficulty": self.difficulty,
            "variant": self.variant.value,
            "round": self.round,
            "phase": self.phase,
            "last_quiz_round": self.last_quiz_round,
            "pending_quiz": (
                [item.to_dict() for item in self.pending_quiz]
                if self.pending_quiz is not None else None
            ),
            "plan": self.plan.to_dict(),
            "profile": self.profile.to_dict(),
            "pool": self.pool.to_dict(),
            "short_term": [
                {
                    "round": entry.round,
                    "learner_text": entry.learner_text,
                    "system_text": entry.system_text,
                }
                for entry in self.history.short_term
            ],
            "long_term": [
                {
                    "round": record.round,
                    "speaker": record.speaker.value,
                    "text": record.text,
                }
                for record in self.history.long_term
            ],
            "finish_reason": self.finish_reason,
            "final_response": (
                self.final_response.to_dict()
                if self.final_response is not None else None
            ),
        }

    @classmethod
    def from_snapshot(cls, data: dict, embedder: EmbeddingProvider,
                      longterm_jsonl: str | None = None) -> "SessionState":
        """Rebuild state from a snapshot dict.

        History vectors come from the long-term JSONL dump when one is
        supplied, and are re-embedded from the snapshot texts otherwise.
        """
        variant = Variant(data["variant"])
        history = LearningHistory(
            embedder, capacity=traits_for(variant).short_term_rounds
        )
        if longterm_jsonl is not None:
            history.load_jsonl(longterm_jsonl)
        else:
            rounds: dict[int, dict[str, str]] = {}
            for record in data["long_term"]:
                rounds.setdefault(record["round"], {})[record["speaker"]] = (
                    record["text"]
                )
            for index in sorted(rounds):
                entry = rounds[index]
                history.append_round(
                    entry.get("learner", ""), entry.get("system", ""), index
                )
        pending = data["pending_quiz"]
        final = data["final_response"]
        return cls(
            session_id=data["session_id"],
            topic=data["topic"],
            difficulty=data["difficulty"],
            variant=variant,
            plan=CoursePlan.from_dict(data["plan"]),
            profile=LearningProfile.from_dict(data["profile"]),
            history=history,
            pool=QuizPool.from_dict(data["pool"]),
            round=data["round"],
            phase=data["phase"],
            pending_quiz=(
                tuple(QuizItem.from_dict(item) for item in pending)
                if pending is not None else None
            ),
            last_quiz_round=data["last_quiz_round"],
            finish_reason=data["finish_reason"],
            final_response=(
                SystemResponse.from_dict(final) if final is not None else None
            ),
        )


class SessionEngine:
    """Drives one session. Construct through ``start_session``."""

    def __init__(self, state: SessionState, gateway: ModelGateway,
                 log: EventLog):
        self.state = state
        self.gateway = gateway
        self.log = log
        self._processing_round = state.round

    # ------------------------------------------------------------------
    # plumbing

    def _record_call(self, tool_tag, template_id, prompt, result) -> None:
        self.log.emit(
            self._processing_round,
            tool_tag,
            "model_call",
            {
                "template": template_id,
                "prompt": prompt,
                "completion": result.text,
                "attempts": result.attempts,
                "timeout": result.timeout,
            },
            latency=result.latency,
        )

    def _ctx(self, round_index: int) -> ToolContext:
        state = self.state
        since_quiz = round_index - (state.last_quiz_round or 0)
        return ToolContext(
            gateway=self.gateway,
            variant=state.variant,
            topic=state.topic,
            difficulty=state.difficulty,
            plan=state.plan,
            history=state.history,
            profile=state.profile,
            pool=state.pool,
            round_index=round_index,
            rounds_since_quiz=since_quiz,
            record_call=self._record_call,
        )

    # ------------------------------------------------------------------
    # message handling

    def handle_user_message(self, text: str) -> SystemResponse:
        state = self.state
        if state.phase != PHASE_ACTIVE:
            raise SessionFinishedError(
                f"session {state.session_id} has already finished"
            )
        if not text:
            raise ValueError("message must be non-empty")
        if not text.strip() and not state.pending_quiz:
            # A blank message answers nothing and routes nowhere; during a
            # quiz it is a legitimate non-answer and gets judged as one.
            raise ValueError("message must be non-empty")

        round_index = state.round + 1
        self._processing_round = round_index
        ctx = self._ctx(round_index)

        if state.pending_quiz:
            response = interaction.evaluate(ctx, text, list(state.pending_quiz))
            if response.deterministic:
                self.log.emit(round_index, "evaluation", "deterministic_judgment",
                              {"count": len(response.judgments)})
            if response.unstructured:
                self.log.emit(round_index, "evaluation", "parse_fallback",
                              {"tool": "evaluation"})
        else:
            decision = interaction.route_message(ctx, text)
            self.log.emit(round_index, "meta_agent", "route_decision",
                          {"tool": decision.tool, "rationale": decision.rationale,
                           "parsed": decision.parsed})
            if not decision.parsed:
                self.log.emit(round_index, "meta_agent", "parse_fallback",
                              {"tool": "route"})
            response = self._dispatch(ctx, decision.tool, text)

        state.pending_quiz = (
            response.quiz_items if response.kind is ResponseKind.QUIZ else None
        )
        state.history.append_round(text, response.text, round_index)
        self.log.emit(round_index, "session", "round_committed",
                      {"round": round_index, "learner_text": text,
                       "response": response.to_dict()})
        state.round = round_index
        if response.kind is ResponseKind.QUIZ:
            state.last_quiz_round = round_index

        if state.traits.reflects:
            self.run_reflection(round_index)
        elif state.traits.scheduled_reaction:
            self.run_reaction(round_index)

        self.maybe_finalize(round_index)

        if round_index % SNAPSHOT_EVERY_ROUNDS == 0:
            self.log.emit(round_index, "session", "snapshot",
                          {"state": state.to_snapshot(),
                           "event_index": len(self.log) })
        return response

    def _dispatch(self, ctx: ToolContext, tool: str, text: str) -> SystemResponse:
        if tool == "answer":
            return interaction.answer(ctx, text)
        if tool == "quiz":
            try:
                return interaction.make_quiz(ctx)
            except EmptyQuizPoolError as err:
                self.log.emit(ctx.round_index, "session", "interaction_fallback",
                              {"from": "quiz", "reason": str(err)})
                return interaction.teach(ctx)
        return interaction.teach(ctx)

    # ------------------------------------------------------------------
    # backend passes

    def run_reflection(self, round_index: int) -> None:
        """Per-round reflection: verdict, then scheduled profile + redesign."""
        state = self.state
        current = next_uncompleted(state.plan)
        if current is not None:
            verdict = None
            try:
                verdict = reflection.judge_completion(self._ctx(round_index))
            except ScriptExhaustedError:
                raise
            except TutorError as err:
                self.log.emit(round_index, "objective_completion",
                              "reflection_error", {"error": str(err)})
            if verdict is not None:
                self.log.emit(round_index, "objective_completion",
                              "completion_verdict",
                              {"objective_id": current.id,
                               "completed": verdict.completed,
                               "parsed": verdict.parsed,
                               "reason": verdict.reason})
                if not verdict.parsed:
                    self.log.emit(round_index, "objective_completion",
                                  "parse_fallback",
                                  {"tool": "objective_completion"})
                if verdict.completed:
                    mark_completed(state.plan, current.id)
                    self.log.emit(round_index, "session", "objective_completed",
                                  {"objective_id": current.id})
                    self._generate_quiz_for(current, round_index)

        if round_index % state.schedule.profile_interval == 0:
            self.log.emit(round_index, "profile_generation",
                          "profile_generation_triggered", {"round": round_index})
            try:
                new_text = reflection.generate_profile(self._ctx(round_index))
            except ScriptExhaustedError:
                raise
            except TutorError as err:
                self.log.emit(round_index, "profile_generation",
                              "reflection_error", {"error": str(err)})
            else:
                state.profile = state.profile.updated(new_text, round_index)
                self.log.emit(round_index, "profile_generation",
                              "profile_updated", state.profile.to_dict())
                self._redesign(round_index)

    def run_reaction(self, round_index: int) -> None:
        """Scheduled reaction pass for the reflection-free variant.

        With reflection on, reactions fire from their reflection triggers
        and this is a no-op; with everything off it is a programming error.
        """
        traits = self.state.traits
        if not (traits.reflects or traits.scheduled_reaction):
            raise RuntimeError(
                "reaction tools are disabled for this session's variant"
            )
        if traits.reflects:
            return
        if round_index % self.state.schedule.profile_interval != 0:
            return
        self._redesign(round_index)
        target = self._shallowest_unkeyed()
        if target is None:
            self.log.emit(round_index, "quiz_generation", "quiz_generation_noop",
                          {"reason": "every objective already has questions"})
        else:
            self._generate_quiz_for(target, round_index)

    def _generate_quiz_for(self, node: ObjectiveNode, round_index: int) -> None:
        self.log.emit(round_index, "quiz_generation", "quiz_generation_triggered",
                      {"objective_id": node.id})
        try:
            items = reaction.generate_quiz_items(self._ctx(round_index), node)
        except ScriptExhaustedError:
            raise
        except TutorError as err:
            self.log.emit(round_index, "quiz_generation", "reaction_error",
                          {"error": str(err)})
            return
        if items:
            self.state.pool.extend(node.id, items)
            self.log.emit(round_index, "quiz_generation", "quiz_pool_extended",
                          {"objective_id": node.id,
                           "items": [item.to_dict() for item in items]})
        else:
            self.log.emit(round_index, "quiz_generation", "quiz_generation_noop",
                          {"objective_id": node.id})
            self.log.emit(round_index, "quiz_generation", "parse_fallback",
                          {"tool": "quiz_generation"})

    def _redesign(self, round_index: int) -> None:
        state = self.state
        self.log.emit(round_index, "course_design", "course_design_triggered",
                      {"initial": False})
        try:
            proposal = reaction.design_course(self._ctx(round_index),
                                              initial=False)
            new_plan = apply_plan_update(state.plan, proposal)
        except ScriptExhaustedError:
            raise
        except TutorError as err:
            self.log.emit(round_index, "course_design", "reaction_error",
                          {"error": str(err)})
            return
        removed = removed_node_ids(state.plan, new_plan)
        for node_id in removed:
            state.pool.entries.pop(node_id, None)
        state.plan = new_plan
        self.log.emit(round_index, "course_design", "plan_updated",
                      {"plan": new_plan.to_dict(), "revision": new_plan.revision,
                       "removed_node_ids": removed})

    def _shallowest_unkeyed(self) -> ObjectiveNode | None:
        keyed = self.state.pool.keyed_ids()
        best = None
        best_depth = None
        for node, depth in iter_preorder(self.state.plan.root):
            if node.id in keyed:
                continue
            if best is None or depth < best_depth:
                best, best_depth = node, depth
        return best

    # ------------------------------------------------------------------
    # termination

    def maybe_finalize(self, round_index: int) -> SystemResponse | None:
        state = self.state
        if state.phase != PHASE_ACTIVE:
            return None
        if next_uncompleted(state.plan) is None:
            reason = REASON_ALL_COMPLETED
        elif round_index >= state.schedule.max_rounds:
            reason = REASON_MAX_ROUNDS
        else:
            return None

        final = None
        try:
            final = reaction.generate_final_quiz(self._ctx(round_index))
        except ScriptExhaustedError:
            raise
        except TutorError as err:
            # The session still closes; the missing assessment is on record.
            self.log.emit(round_index, "session", "finalize_error",
                          {"error": str(err)})
        state.phase = PHASE_FINISHED
        state.finish_reason = reason
        state.pending_quiz = None
        state.final_response = final
        self.log.emit(round_index, "session", "finalized",
                      {"reason": reason,
                       "response": final.to_dict() if final else None})
        return final


def start_session(topic: str, difficulty: int, variant: Variant | str,
                  gateway: ModelGateway, log: EventLog | None = None,
                  session_id: str | None = None) -> SessionEngine:
    """Create a session: initial course design plus the opening teach turn.

    A course-design failure propagates and no session exists afterwards;
    the event log will show ``session_created`` without ``plan_initialized``.
    """
    schedule = schedule_for(difficulty)
    if not topic.strip():
        raise ValueError("topic must be non-empty")
    variant = Variant(variant)
    traits = traits_for(variant)
    log = log if log is not None else EventLog()
    session_id = session_id or derive_session_id(topic, difficulty, variant)

    provisional = CoursePlan(
        root=ObjectiveNode(id="n0", title=topic, status=Status.PENDING),
        difficulty=difficulty,
    )
    state = SessionState(
        session_id=session_id,
        topic=topic,
        difficulty=difficulty,
        variant=variant,
        plan=provisional,
        profile=LearningProfile(),
        history=LearningHistory(gateway.embedder,
                                capacity=traits.short_term_rounds),
        pool=QuizPool(),
    )
    engine = SessionEngine(state, gateway, log)
    log.emit(0, "session", "session_created",
             {"session_id": session_id, "topic": topic,
              "difficulty": difficulty, "variant": variant.value,
              "profile_interval": schedule.profile_interval,
              "max_rounds": schedule.max_rounds})

    proposal = reaction.design_course(engine._ctx(0), initial=True)
    root = assign_fresh_ids(proposal)
    for node, _ in iter_preorder(root):
        node.status = Status.PENDING
    state.plan = CoursePlan(root=root, difficulty=difficulty)
    log.emit(0, "course_design", "plan_initialized",
             {"plan": state.plan.to_dict()})

    opening = interaction.teach(engine._ctx(0))
    log.emit(0, "teach", "opening_turn", {"response": opening.to_dict()})
    return engine


# ---------------------------------------------------------------------------
# replay and transcripts


def apply_event(state: SessionState, event: Event) -> None:
    """Advance replayed state by one event.

    Only state-bearing kinds move anything; informational events (model
    calls, route decisions, verdict records, triggers, snapshots) and
    unknown kinds are skipped, so old logs stay replayable as the schema
    grows.
    """
    payload = event.payload
    if event.kind in ("plan_initialized", "plan_updated"):
        state.plan = CoursePlan.from_dict(payload["plan"])
        for node_id in payload.get("removed_node_ids", ()):
            state.pool.entries.pop(node_id, None)
    elif event.kind == "round_committed":
        response = SystemResponse.from_dict(payload["response"])
        round_index = payload["round"]
        state.history.append_round(payload["learner_text"], response.text,
                                   round_index)
        state.round = round_index
        state.pending_quiz = (
            response.quiz_items
            if response.kind is ResponseKind.QUIZ else None
        )
        if response.kind is ResponseKind.QUIZ:
            state.last_quiz_round = round_index
    elif event.kind == "objective_completed":
        mark_completed(state.plan, payload["objective_id"])
    elif event.kind == "profile_updated":
        state.profile = LearningProfile.from_dict(payload)
    elif event.kind == "quiz_pool_extended":
        items = [QuizItem.from_dict(item) for item in payload["items"]]
        state.pool.extend(payload["objective_id"], items)
    elif event.kind == "finalized":
        state.phase = PHASE_FINISHED
        state.finish_reason = payload["reason"]
        state.pending_quiz = None
        state.final_response = (
            SystemResponse.from_dict(payload["response"])
            if payload["response"] is not None else None
        )


def replay_events(events: list[Event],
                  embedder: EmbeddingProvider) -> SessionState:
    """Rebuild session state purely from its event log, no model calls."""
    state: SessionState | None = None
    for event in events:
        if event.kind == "session_created":
            payload = event.payload
            variant = Variant(payload["variant"])
            state = SessionState(
                session_id=payload["session_id"],
                topic=payload["topic"],
                difficulty=payload["difficulty"],
                variant=variant,
                plan=CoursePlan(
                    root=ObjectiveNode(id="n0", title=payload["topic"],
                                       status=Status.PENDING),
                    difficulty=payload["difficulty"],
                ),
                profile=LearningProfile(),
                history=LearningHistory(
                    embedder, capacity=traits_for(variant).short_term_rounds
                ),
                pool=QuizPool(),
            )
        elif state is None:
            raise ValueError("event log does not start with session_created")
        else:
            apply_event(state, event)
    if state is None:
        raise ValueError("empty event log")
    return state


def transcript_turns(events: list[Event]) -> list[dict]:
    """Learner-visible conversation extracted from the event log."""
    turns = []
    for event in events:
        payload = event.payload
        if event.kind == "opening_turn":
            response = payload["response"]
            turns.append({"round": 0, "speaker": "system",
                          "kind": response["kind"], "text": response["text"]})
        elif event.kind == "round_committed":
            response = payload["response"]
            turns.append({"round": payload["round"], "speaker": "learner",
                          "text": payload["learner_text"]})
            turns.append({"round": payload["round"], "speaker": "system",
                          "kind": response["kind"], "text": response["text"]})
        elif event.kind == "finalized" and payload.get("response"):
            response = payload["response"]
            turns.append({"round": event.round, "speaker": "system",
                          "kind": response["kind"], "text": response["text"],
                          "final": True})
    return turns


def render_transcript(events: list[Event]) -> str:
    """Plain-text transcript, deterministic for identical logs."""
    lines = []
    for event in events:
        if event.kind == "session_created":
            payload = event.payload
            lines.append(
                f"session {payload['session_id']}: {payload['topic']} "
                f"(difficulty {payload['difficulty']}, {payload['variant']})"
            )
    for turn in transcript_turns(events):
        if turn["speaker"] == "learner":
            lines.append(f"[round {turn['round']}] Learner: {turn['text']}")
        else:
            kind = turn.get("kind", "teach")
            tag = f"{kind}, final" if turn.get("final") else kind
            lines.append(f"[round {turn['round']}] Tutor ({tag}): {turn['text']}")
    for event in events:
        if event.kind == "finalized":
            lines.append(f"session finished: {event.payload['reason']}")
    return "\n".join(lines) + "\n"
