"""Event log durability and serialization round trips."""

from __future__ import annotations

import json

import pytest

from tutorkit.orchestrator.events import (
    CorruptLogError,
    Event,
    EventLog,
    read_events,
    write_events,
)


def sample_events():
    return [
        Event(round=0, actor="session", kind="session_created",
              payload={"topic": "Erosion", "difficulty": 2}),
        Event(round=1, actor="teach", kind="model_call",
              payload={"template_id": "teach"}, latency=0.125),
        Event(round=1, actor="session", kind="round_committed",
              payload={"learner": "hi", "response": {"kind": "teach",
                                                     "text": "ok"}}),
    ]


class TestSerialization:
    def test_lines_have_sorted_keys(self):
        line = sample_events()[1].to_line()
        data = json.loads(line)
        assert list(data) == sorted(data)
        assert line == json.dumps(data, sort_keys=True, ensure_ascii=False)

    def test_non_ascii_text_stays_readable(self):
        event = Event(round=1, actor="teach", kind="model_call",
                      payload={"text": "Érosion côtière"})
        assert "Érosion côtière" in event.to_line()

    def test_round_trip_through_disk(self, tmp_path):
        path = tmp_path / "events.jsonl"
        write_events(path, sample_events())
        assert read_events(path) == sample_events()

    def test_identical_logs_are_byte_identical(self, tmp_path):
        first, second = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        write_events(first, sample_events())
        write_events(second, sample_events())
        assert first.read_bytes() == second.read_bytes()


class TestEventLog:
    def test_append_writes_through_to_disk(self, tmp_path):
        path = tmp_path / "events.jsonl"
        log = EventLog(path)
        for event in sample_events():
            log.append(event)
        log.sync()
        assert read_events(path) == sample_events()
        log.close()

    def test_emit_builds_and_returns_the_event(self):
        log = EventLog()
        event = log.emit(3, "session", "round_committed", {"learner": "hi"})
        assert event.round == 3 and event.payload == {"learner": "hi"}
        assert log.events == [event]

    def test_by_kind_filters(self):
        log = EventLog()
        for event in sample_events():
            log.append(event)
        assert [e.kind for e in log.by_kind("model_call")] == ["model_call"]

    def test_memory_only_log_needs_no_path(self):
        log = EventLog()
        log.emit(0, "session", "session_created")
        log.sync()  # no sink: a quiet no-op
        log.close()
        assert len(log) == 1


class TestCorruptLogs:
    def test_bad_json_names_the_line(self, tmp_path):
        path = tmp_path / "events.jsonl"
        write_events(path, sample_events())
        with path.open("a", encoding="utf-8") as handle:
            handle.write("{not json}\n")
        with pytest.raises(CorruptLogError) as exc:
            read_events(path)
        assert exc.value.line_number == 4
        assert str(path) in str(exc.value)

    def test_truncated_final_line_is_reported(self, tmp_path):
        path = tmp_path / "events.jsonl"
        write_events(path, sample_events())
        with path.open("a", encoding="utf-8") as handle:
            handle.write('{"round": 2, "actor": "teach", "kind": "model')
        with pytest.raises(CorruptLogError) as exc:
            read_events(path)
        assert exc.value.line_number == 4

    def test_missing_required_field_is_corrupt(self, tmp_path):
        path = tmp_path / "events.jsonl"
        path.write_text('{"round": 1, "actor": "x"}\n', encoding="utf-8")
        with pytest.raises(CorruptLogError):
            read_events(path)

    def test_blank_lines_are_tolerated(self, tmp_path):
        path = tmp_path / "events.jsonl"
        write_events(path, sample_events())
        with path.open("a", encoding="utf-8") as handle:
            handle.write("\n")
        assert len(read_events(path)) == 3
