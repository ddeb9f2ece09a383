from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import edit_distance_recursive
from sitewalk.capture import Fixation, ObservationSequence
from sitewalk.evaluation import (DEFAULT_CLASS_INSTRUCTIONS, ChecklistSpec,
                                 checklist_from_document, checklist_to_document,
                                 compare_sessions, coverage, fold_consecutive,
                                 levenshtein, order_distance)
from sitewalk.mining import build_strategy_model
from sitewalk.scene import ObjectClass


def seq(ids, session_id="s"):
    fixations = []
    for i, object_id in enumerate(ids):
        fixations.append(Fixation(object_id, float(2 * i), 2.0 * i + 1, 1.0))
    return ObservationSequence(session_id, tuple(fixations))


CHECKLIST = ChecklistSpec(("E1", "A1", "S1", "R1"))


class TestChecklist:
    def test_default_instruction_texts(self):
        assert DEFAULT_CLASS_INSTRUCTIONS[ObjectClass.FIRE_EXTINGUISHER] == \
            ("check the test and maintenance dates",)
        assert DEFAULT_CLASS_INSTRUCTIONS[ObjectClass.FIRE_ALARM_PANEL] == \
            ("check the battery conditions",)
        assert DEFAULT_CLASS_INSTRUCTIONS[ObjectClass.EXIT_SIGN] == \
            ("check the battery conditions",)

    def test_duplicate_required_rejected(self):
        with pytest.raises(ValueError, match="distinct"):
            ChecklistSpec(("E1", "E1"))

    def test_document_round_trip(self):
        doc = checklist_to_document(CHECKLIST)
        assert checklist_from_document(doc) == CHECKLIST


class TestCoverage:
    def test_full_coverage(self):
        report = coverage(seq(["E1", "A1", "S1", "R1"]), CHECKLIST)
        assert report.coverage == 1.0
        assert report.missed == frozenset()

    def test_zero_coverage(self):
        report = coverage(seq(["X9"]), CHECKLIST)
        assert report.coverage == 0.0
        assert report.missed == frozenset(CHECKLIST.required)

    def test_three_of_four(self):
        report = coverage(seq(["E1", "A1", "R1"]), CHECKLIST)
        assert report.coverage == 0.75
        assert report.missed == frozenset({"S1"})

    def test_observed_union_missed_is_required(self):
        rng = random.Random(1)
        pool = ["E1", "A1", "S1", "R1", "X1", "X2"]
        for _ in range(50):
            ids = fold_consecutive(rng.choices(pool, k=rng.randint(1, 10)))
            report = coverage(seq(ids), CHECKLIST)
            assert report.observed | report.missed == frozenset(CHECKLIST.required)
            assert report.coverage == len(report.observed) / 4

    def test_monotone_under_added_fixation(self):
        base_ids = ["E1", "A1"]
        base = coverage(seq(base_ids), CHECKLIST)
        extended = coverage(seq(base_ids + ["S1"]), CHECKLIST)
        assert extended.coverage >= base.coverage

    def test_empty_checklist_rejected(self):
        with pytest.raises(ValueError):
            coverage(seq(["E1"]), ChecklistSpec(()))


class TestOrderDistance:
    def test_identical_lists(self):
        assert order_distance(seq(["A", "B", "C"]), ["A", "B", "C"]) == 0.0

    def test_disjoint_equal_length(self):
        assert order_distance(seq(["A", "B", "C"]), ["X", "Y", "Z"]) == 1.0

    def test_empty_sequence_is_all_insertions(self):
        assert order_distance(ObservationSequence("s", ()), ["A", "B", "C"]) == 1.0

    def test_matches_recursive_oracle(self):
        rng = random.Random(2)
        labels = "ABCDE"
        for _ in range(200):
            a = [rng.choice(labels) for _ in range(rng.randint(0, 12))]
            b = [rng.choice(labels) for _ in range(rng.randint(1, 12))]
            a = fold_consecutive(a)
            expected = edit_distance_recursive(a, b)
            assert levenshtein(a, b) == expected
            if a or b:
                assert order_distance(seq(a) if a else ObservationSequence("s", ()),
                                      b) == expected / max(len(a), len(b))

    @given(st.lists(st.sampled_from("ABCD"), max_size=10),
           st.lists(st.sampled_from("ABCD"), min_size=1, max_size=10))
    @settings(max_examples=200, deadline=None)
    def test_range_symmetry_identity(self, a, b):
        distance = levenshtein(a, b)
        assert levenshtein(b, a) == distance
        assert 0 <= distance <= max(len(a), len(b))
        assert (distance == 0) == (a == b)


class TestCompareSessions:
    def setup_method(self):
        self.model = build_strategy_model(
            [seq(["E1", "A1", "S1", "R1"], f"s{i}") for i in range(3)], "demo")

    def test_novice_matches_consensus(self):
        report = compare_sessions(seq(["E1", "A1", "S1", "R1"]), self.model, CHECKLIST)
        assert report.coverage == 1.0
        assert report.order_distance == 0.0

    def test_reversed_order_full_coverage(self):
        novice = seq(["R1", "S1", "A1", "E1"])
        report = compare_sessions(novice, self.model, CHECKLIST)
        assert report.coverage == 1.0
        expected = edit_distance_recursive(["R1", "S1", "A1", "E1"],
                                           ["E1", "A1", "S1", "R1"]) / 4
        assert report.order_distance == pytest.approx(expected)
        assert report.order_distance > 0

    def test_empty_novice(self):
        report = compare_sessions(ObservationSequence("n", ()), self.model, CHECKLIST)
        assert report.coverage == 0.0
        assert report.order_distance == 1.0

    def test_canonical_restricted_to_checklist(self):
        model = build_strategy_model(
            [seq(["E1", "X7", "A1", "S1", "R1"], f"s{i}") for i in range(2)], "demo")
        report = compare_sessions(seq(["E1", "A1", "S1", "R1"]), model, CHECKLIST)
        assert report.order_distance == 0.0
