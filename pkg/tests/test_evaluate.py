"""Tests for confusion matrices, metrics, rounding, and aggregation."""

import math

import pytest

from zhstance.evaluate import (
    ConfusionMatrix,
    EvaluationError,
    binary_counts,
    confusion_matrix,
    mean_std,
    metric_report,
    metrics,
    round_half_up,
)

# labels A, B, C; rows are keys, columns are outputs
THREE_CLASS = ConfusionMatrix(
    ("A", "B", "C"),
    ((5, 1, 0),
     (2, 3, 1),
     (0, 0, 4)),
)


class TestConfusionMatrix:
    def test_build_from_pairs(self):
        m = confusion_matrix(
            keys=["A", "A", "B", "B", "B"],
            outputs=["A", "B", "B", "B", "A"],
            label_set=("A", "B"),
        )
        assert m.counts == ((1, 1), (1, 2))
        assert m.total == 5
        assert m.trace == 3

    def test_column_order_follows_label_set(self):
        m = confusion_matrix(["B"], ["A"], label_set=("B", "A"))
        assert m.labels == ("B", "A")
        assert m.counts == ((0, 1), (0, 0))

    def test_unknown_labels_rejected(self):
        with pytest.raises(EvaluationError, match="key"):
            confusion_matrix(["Z"], ["A"], ("A",))
        with pytest.raises(EvaluationError, match="output"):
            confusion_matrix(["A"], ["Z"], ("A",))

    def test_length_mismatch_rejected(self):
        with pytest.raises(EvaluationError):
            confusion_matrix(["A"], [], ("A",))

    def test_support_and_index(self):
        assert THREE_CLASS.support("B") == 6
        assert THREE_CLASS.index("C") == 2
        with pytest.raises(EvaluationError):
            THREE_CLASS.index("Z")


class TestBinaryCounts:
    def test_one_vs_rest(self):
        assert binary_counts(THREE_CLASS, "B") == (3, 1, 3, 9)
        assert binary_counts(THREE_CLASS, "A") == (5, 2, 1, 8)
        assert binary_counts(THREE_CLASS, "C") == (4, 1, 0, 11)

    def test_counts_sum_to_total(self):
        for label in THREE_CLASS.labels:
            assert sum(binary_counts(THREE_CLASS, label)) == THREE_CLASS.total


class TestMetrics:
    def test_values(self):
        got = metrics(THREE_CLASS, "B")
        assert got.precision == pytest.approx(3 / 4)
        assert got.recall == pytest.approx(3 / 6)
        assert got.f1 == pytest.approx(2 * 0.75 * 0.5 / 1.25)
        assert got.accuracy == pytest.approx(12 / 16)

    def test_binary_accuracy_equals_trace_ratio(self):
        m = ConfusionMatrix(("X", "Y"), ((7, 2), (3, 9)))
        for label in m.labels:
            assert metrics(m, label).accuracy == pytest.approx(m.trace / m.total)

    def test_zero_denominators_yield_zero(self):
        # nothing predicted as X and nothing truly X
        m = ConfusionMatrix(("X", "Y"), ((0, 0), (0, 5)))
        got = metrics(m, "X")
        assert (got.precision, got.recall, got.f1) == (0.0, 0.0, 0.0)

    def test_zero_recall_with_nonzero_precision_denominator(self):
        m = ConfusionMatrix(("X", "Y"), ((0, 3), (2, 1)))
        got = metrics(m, "X")
        assert got.precision == 0.0
        assert got.recall == 0.0
        assert got.f1 == 0.0

    def test_empty_matrix_rejected(self):
        m = ConfusionMatrix(("X",), ((0,),))
        with pytest.raises(EvaluationError):
            metrics(m, "X")


class TestMetricReport:
    def test_report(self):
        report = metric_report(THREE_CLASS)
        assert report.accuracy == pytest.approx(12 / 16)
        assert set(report.per_label) == {"A", "B", "C"}
        assert report.per_label["B"].precision == pytest.approx(0.75)
        assert report.support == {"A": 6, "B": 6, "C": 4}

    def test_empty_rejected(self):
        with pytest.raises(EvaluationError):
            metric_report(ConfusionMatrix(("X",), ((0,),)))


class TestRoundHalfUp:
    def test_half_rounds_up_not_to_even(self):
        assert round_half_up(0.125) == 0.13
        assert round_half_up(0.135) == 0.14

    def test_shortest_repr_is_what_rounds(self):
        # 0.705 is stored as 0.70499999... but its repr is "0.705",
        # which must round to 0.71
        assert round_half_up(0.705) == 0.71

    def test_plain_cases(self):
        assert round_half_up(0.524) == 0.52
        assert round_half_up(0.526) == 0.53
        assert round_half_up(1.0) == 1.0

    def test_negative_ties_round_away_from_zero(self):
        assert round_half_up(-0.125) == -0.13

    def test_places(self):
        assert round_half_up(2.5, places=0) == 3.0
        assert round_half_up(0.12345, places=4) == 0.1235


class TestMeanStd:
    def test_values(self):
        mean, std = mean_std([1.0, 2.0, 3.0, 4.0])
        assert mean == pytest.approx(2.5)
        assert std == pytest.approx(math.sqrt(5 / 3), abs=1e-12)

    def test_single_value(self):
        assert mean_std([0.9]) == (0.9, 0.0)

    def test_empty_rejected(self):
        with pytest.raises(EvaluationError):
            mean_std([])
