"""Property tests: plan invariants, retrieval oracle, parser robustness."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tutorkit.errors import (
    EmptyPlanError,
    OutlineParseError,
    PlanDepthError,
    RoundOrderError,
)
from tutorkit.memory.history import Speaker
from tutorkit.memory.outline import parse_outline, plan_to_outline
from tutorkit.memory.plan import (
    CoursePlan,
    ObjectiveNode,
    Status,
    apply_plan_update,
    iter_preorder,
    mark_completed,
    next_uncompleted,
    normalize_title,
)
from tutorkit.memory.profile import LearningProfile
from tutorkit.tools.parsing import (
    ROUTES,
    parse_grades,
    parse_questions,
    parse_route,
    parse_yes_no,
)

from strategies import (
    filled_histories,
    mcq_completions,
    plan_trees,
    preorder_oracle,
    utterances,
)


# ---------------------------------------------------------------------------
# Plan tree invariants


class TestPlanTrees:
    @given(plan_trees())
    def test_cursor_is_the_first_pending_node_in_preorder(self, plan):
        pending = [node for node in preorder_oracle(plan.root)
                   if node.status is Status.PENDING]
        cursor = next_uncompleted(plan)
        if pending:
            assert cursor is pending[0]
        else:
            assert cursor is None

    @given(plan_trees())
    def test_preorder_agrees_with_the_reference_walk(self, plan):
        assert plan.preorder_ids() == [
            node.id for node in preorder_oracle(plan.root)
        ]

    @given(plan_trees())
    def test_ids_are_unique_and_find_reaches_every_node(self, plan):
        ids = plan.preorder_ids()
        assert len(ids) == len(set(ids)) == plan.node_count()
        for node_id in ids:
            assert plan.find(node_id).id == node_id

    @given(plan_trees())
    def test_serialization_round_trips(self, plan):
        assert CoursePlan.from_dict(plan.to_dict()).to_json() == plan.to_json()

    @given(plan_trees(), st.data())
    def test_marking_completed_touches_exactly_one_node(self, plan, data):
        target = data.draw(st.sampled_from(plan.preorder_ids()))
        before = {node.id: node.status for node, _ in iter_preorder(plan.root)}
        mark_completed(plan, target)
        mark_completed(plan, target)  # idempotent
        for node, _ in iter_preorder(plan.root):
            if node.id == target:
                assert node.status is Status.COMPLETED
            else:
                assert node.status is before[node.id]

    @given(plan_trees())
    def test_update_with_the_same_titles_preserves_all_progress(self, plan):
        proposed = ObjectiveNode.from_dict(plan.root.to_dict())
        for node, _ in iter_preorder(proposed):
            node.status = Status.PENDING  # proposer's statuses are ignored
        updated = apply_plan_update(plan, proposed)
        assert updated.revision == plan.revision + 1
        assert updated.to_dict()["root"] == plan.to_dict()["root"]

    @given(plan_trees())
    def test_update_gives_new_titles_fresh_pending_nodes(self, plan):
        proposed = ObjectiveNode.from_dict(plan.root.to_dict())
        proposed.children.append(ObjectiveNode(id="whatever",
                                               title="brand new area",
                                               status=Status.COMPLETED))
        updated = apply_plan_update(plan, proposed)
        added = updated.root.children[-1]
        assert added.title == "brand new area"
        assert added.status is Status.PENDING
        assert added.id not in plan.preorder_ids()

    @given(plan_trees())
    def test_update_rejects_a_fourth_layer(self, plan):
        chain = ObjectiveNode(id="a", title="layer one", children=[
            ObjectiveNode(id="b", title="layer two", children=[
                ObjectiveNode(id="c", title="layer three", children=[
                    ObjectiveNode(id="d", title="layer four"),
                ]),
            ]),
        ])
        with pytest.raises(PlanDepthError):
            apply_plan_update(plan, chain)
        with pytest.raises(EmptyPlanError):
            apply_plan_update(plan, None)

    @given(plan_trees())
    def test_outline_round_trip_is_an_isomorphism(self, plan):
        def signature(root):
            return [(depth, normalize_title(node.title), node.status)
                    for node, depth in iter_preorder(root)]

        forest = parse_outline(plan_to_outline(plan))
        assert len(forest) == 1
        assert signature(forest[0]) == signature(plan.root)


# ---------------------------------------------------------------------------
# Retrieval against a brute-force oracle


def fsum_similarity(record, query_vec) -> float:
    return math.fsum(
        float(a) * float(b)
        for a, b in zip(record.vector.values, query_vec.values)
    )


class TestRetrieval:
    @settings(deadline=None)
    @given(filled_histories(), st.integers(1, 8))
    def test_matches_the_brute_force_ranking(self, filled, k):
        history, embedder, _, query = filled
        query_vec = embedder.embed(query)
        scored = [(fsum_similarity(record, query_vec), record)
                  for record in history.long_term]
        ranked = sorted(scored, key=lambda pair: (
            -pair[0],
            pair[1].round,
            0 if pair[1].speaker is Speaker.LEARNER else 1,
        ))
        oracle = [record for _, record in ranked[:k]]
        assert history.retrieve_relevant(query, k) == oracle

    @given(filled_histories())
    def test_short_term_is_exactly_the_last_rounds(self, filled):
        history, _, pairs, _ = filled
        assert len(history.short_term) <= history.capacity
        kept = pairs[-history.capacity:]
        assert [(r.learner_text, r.system_text)
                for r in history.short_term] == kept
        first_kept = len(pairs) - len(kept) + 1
        assert [r.round for r in history.short_term] == list(
            range(first_kept, len(pairs) + 1)
        )

    @given(filled_histories())
    def test_long_term_keeps_everything_in_order(self, filled):
        history, _, pairs, _ = filled
        assert len(history.long_term) == 2 * len(pairs)
        assert [(record.round, record.speaker) for record in history.long_term] == [
            (index + 1, speaker)
            for index in range(len(pairs))
            for speaker in (Speaker.LEARNER, Speaker.SYSTEM)
        ]
        assert history.last_round == len(pairs)

    @given(filled_histories(), st.integers(-3, 0))
    def test_rejects_out_of_order_rounds_and_bad_k(self, filled, bad_k):
        history, _, pairs, query = filled
        with pytest.raises(RoundOrderError):
            history.append_round("a", "b", len(pairs))  # repeat
        with pytest.raises(RoundOrderError):
            history.append_round("a", "b", len(pairs) + 2)  # skip
        with pytest.raises(ValueError):
            history.retrieve_relevant(query, bad_k)


# ---------------------------------------------------------------------------
# Parser robustness


class TestParserFuzz:
    @given(st.text())
    def test_route_never_crashes_and_stays_in_range(self, text):
        assert parse_route(text) in (None, *ROUTES)

    @given(st.text())
    def test_yes_no_never_crashes(self, text):
        assert parse_yes_no(text) in (None, True, False)

    @given(st.text(), st.integers(1, 5))
    def test_grades_are_none_or_well_formed(self, text, expected):
        grades = parse_grades(text, expected)
        if grades is not None:
            assert grades
            numbers = [j.question for j in grades]
            assert numbers == sorted(set(numbers))
            assert all(1 <= n <= expected for n in numbers)
            assert all(isinstance(j.correct, bool) for j in grades)

    @given(st.text())
    def test_questions_are_none_or_individually_valid(self, text):
        questions = parse_questions(text)
        if questions is not None:
            assert questions
            for question in questions:
                assert question.valid()
                labels = [label for label, _ in question.options]
                assert question.answer in labels

    @given(mcq_completions())
    def test_well_formed_blocks_parse_back_exactly(self, built):
        text, expected = built
        questions = parse_questions(text)
        assert questions is not None
        assert [
            (q.stem, tuple(q.options), q.answer) for q in questions
        ] == expected

    @given(st.lists(st.text(alphabet="ab \n-*", max_size=10), max_size=5))
    def test_outline_parse_never_invents_empty_titles(self, lines):
        text = "\n".join(lines)
        try:
            forest = parse_outline(text)
        except OutlineParseError:  # the one advertised failure mode
            return
        for root in forest:
            for node, _ in iter_preorder(root):
                assert node.title.strip()


# ---------------------------------------------------------------------------
# Monotone counters


class TestCounters:
    @given(plan_trees(), st.integers(1, 4))
    def test_plan_revision_advances_by_one_per_update(self, plan, updates):
        current = plan
        for step in range(updates):
            proposal = ObjectiveNode.from_dict(current.root.to_dict())
            current = apply_plan_update(current, proposal)
            assert current.revision == plan.revision + step + 1

    @given(st.lists(utterances, min_size=1, max_size=6))
    def test_profile_version_counts_updates(self, texts):
        profile = LearningProfile()
        for index, text in enumerate(texts):
            profile = profile.updated(text, round_index=index + 1)
            assert profile.version == index + 1
            assert profile.text == text
            assert profile.updated_at_round == index + 1
        with pytest.raises(ValueError):
            profile.updated("   ", round_index=99)
