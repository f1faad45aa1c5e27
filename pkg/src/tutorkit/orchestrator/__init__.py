"""Session control flow: scheduling, event sourcing, the engine itself."""

from tutorkit.orchestrator.events import (
    CorruptLogError,
    Event,
    EventLog,
    read_events,
    write_events,
)
from tutorkit.orchestrator.schedule import SCHEDULE_TABLE, Schedule, schedule_for
from tutorkit.orchestrator.session import (
    PHASE_ACTIVE,
    PHASE_FINISHED,
    REASON_ALL_COMPLETED,
    REASON_MAX_ROUNDS,
    SNAPSHOT_EVERY_ROUNDS,
    SessionEngine,
    SessionState,
    apply_event,
    derive_session_id,
    render_transcript,
    replay_events,
    start_session,
    transcript_turns,
)

__all__ = [
    "CorruptLogError",
    "Event",
    "EventLog",
    "PHASE_ACTIVE",
    "PHASE_FINISHED",
    "REASON_ALL_COMPLETED",
    "REASON_MAX_ROUNDS",
    "SCHEDULE_TABLE",
    "SNAPSHOT_EVERY_ROUNDS",
    "Schedule",
    "SessionEngine",
    "SessionState",
    "apply_event",
    "derive_session_id",
    "read_events",
    "render_transcript",
    "replay_events",
    "schedule_for",
    "start_session",
    "transcript_turns",
    "write_events",
]
