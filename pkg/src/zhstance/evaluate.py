"""Confusion matrices and classification metrics.

Rows of a confusion matrix are key (true) labels, columns are output
(predicted) labels. Per-label metrics are computed one-vs-rest; any
metric whose denominator vanishes is defined as 0.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal


class EvaluationError(ValueError):
    """Raised for inconsistent labels or empty inputs."""


@dataclass(frozen=True)
class ConfusionMatrix:
    labels: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    @property
    def trace(self) -> int:
        return sum(self.counts[i][i] for i in range(len(self.labels)))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise EvaluationError(f"label {label!r} not in matrix labels {self.labels}") from None

    def support(self, label: str) -> int:
        return sum(self.counts[self.index(label)])


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class LabelMetrics:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class MetricReport:
    accuracy: float
    per_label: dict[str, LabelMetrics]
    support: dict[str, int]


def confusion_matrix(keys: list[str], outputs: list[str], label_set) -> ConfusionMatrix:
    labels = tuple(label_set)
    if len(keys) != len(outputs):
        raise EvaluationError(f"{len(keys)} keys vs {len(outputs)} outputs")
    index = {label: i for i, label in enumerate(labels)}
    counts = [[0] * len(labels) for _ in labels]
    for key, output in zip(keys, outputs):
        if key not in index:
            raise EvaluationError(f"unknown key label {key!r}")
        if output not in index:
            raise EvaluationError(f"unknown output label {output!r}")
        counts[index[key]][index[output]] += 1
    return ConfusionMatrix(labels, tuple(tuple(row) for row in counts))


def binary_counts(m: ConfusionMatrix, positive: str) -> tuple[int, int, int, int]:
    """One-vs-rest (TP, FP, FN, TN) for the chosen positive label."""
    p = m.index(positive)
    tp = m.counts[p][p]
    fp = sum(m.counts[i][p] for i in range(len(m.labels)) if i != p)
    fn = sum(m.counts[p][j] for j in range(len(m.labels)) if j != p)
    tn = m.total - tp - fp - fn
    return tp, fp, fn, tn


def _safe_div(num: float, den: float) -> float:
    return num / den if den else 0.0


def metrics(m: ConfusionMatrix, positive: str) -> Metrics:
    """Accuracy, precision, recall, and F1 with `positive` as the positive
    class; zero-denominator cases yield 0."""
    total = m.total
    if total == 0:
        raise EvaluationError("metrics on an empty matrix")
    tp, fp, fn, tn = binary_counts(m, positive)
    precision = _safe_div(tp, tp + fp)
    recall = _safe_div(tp, tp + fn)
    f1 = _safe_div(2.0 * precision * recall, precision + recall)
    return Metrics((tp + tn) / total, precision, recall, f1)


def metric_report(m: ConfusionMatrix) -> MetricReport:
    if m.total == 0:
        raise EvaluationError("metrics on an empty matrix")
    per_label = {}
    support = {}
    for label in m.labels:
        scores = metrics(m, label)
        per_label[label] = LabelMetrics(scores.precision, scores.recall, scores.f1)
        support[label] = m.support(label)
    return MetricReport(m.trace / m.total, per_label, support)


def round_half_up(value: float, places: int = 2) -> float:
    """Decimal half-up rounding as used in the human-readable reports."""
    exponent = Decimal(1).scaleb(-places)
    return float(Decimal(repr(value)).quantize(exponent, rounding=ROUND_HALF_UP))


def mean_std(values: list[float]) -> tuple[float, float]:
    """Arithmetic mean and sample standard deviation (0 for fewer than 2)."""
    if not values:
        raise EvaluationError("no values to aggregate")
    mean = statistics.fmean(values)
    std = statistics.stdev(values) if len(values) > 1 else 0.0
    return mean, std
