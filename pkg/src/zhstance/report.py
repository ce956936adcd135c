"""Report assembly: canonical JSON payloads and human-readable tables.

JSON output keeps full float precision and a canonical layout (sorted
keys, two-space indent, UTF-8 text) so identical runs serialize to
identical bytes. The human-readable views render from the payload dict
itself (any stored report can be re-rendered) and round to two decimals,
half up, the way the metrics are usually quoted.
"""

from __future__ import annotations

import json

from .evaluate import MetricReport, round_half_up
from .pipeline import (
    AccountPrediction,
    CrossValResult,
    FoldResult,
    PipelineConfig,
    TestResult,
)


class ReportError(ValueError):
    """Raised when a stored report payload is missing required fields."""


def dumps_report(payload: dict) -> str:
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def prediction_dict(p: AccountPrediction) -> dict:
    return {
        "account_id": p.account_id,
        "label": p.label,
        "predicted": p.predicted,
        "neighbors": [
            {"account_id": nb.account_id, "label": nb.label, "similarity": nb.similarity}
            for nb in p.neighbors
        ],
        "votes": dict(p.votes),
    }


def _metric_dicts(report: MetricReport) -> tuple[dict, dict]:
    per_label = {
        label: {"precision": m.precision, "recall": m.recall, "f1": m.f1}
        for label, m in report.per_label.items()
    }
    return per_label, dict(report.support)


def fold_dict(f: FoldResult) -> dict:
    per_label, support = _metric_dicts(f.report)
    return {
        "fold": f.fold,
        "validation_ids": list(f.validation_ids),
        "confusion": [list(row) for row in f.confusion.counts],
        "accuracy": f.report.accuracy,
        "per_label": per_label,
        "support": support,
        "predictions": [prediction_dict(p) for p in f.predictions],
    }


def crossval_report(result: CrossValResult, config: PipelineConfig) -> dict:
    return {
        "config": config.to_echo(),
        "label_set": list(result.label_set),
        "folds": [fold_dict(f) for f in result.folds],
        "aggregate": result.aggregate,
    }


def test_report(result: TestResult, config: PipelineConfig) -> dict:
    per_label, support = _metric_dicts(result.report)
    return {
        "config": config.to_echo(),
        "label_set": list(result.label_set),
        "confusion": [list(row) for row in result.confusion.counts],
        "accuracy": result.report.accuracy,
        "per_label": per_label,
        "support": support,
        "predictions": [prediction_dict(p) for p in result.predictions],
    }


def _fmt(value: float) -> str:
    return f"{round_half_up(value):.2f}"


def _get(payload: dict, key: str):
    try:
        return payload[key]
    except (KeyError, TypeError):
        raise ReportError(f"report payload is missing {key!r}") from None


def format_confusion(labels: list[str], counts: list[list[int]]) -> str:
    """Counts table with key labels as rows and output labels as columns."""
    header = ["Key \\ Output", *labels]
    rows = [[label, *(str(c) for c in row)] for label, row in zip(labels, counts)]
    widths = [max(len(line[i]) for line in [header, *rows]) for i in range(len(header))]
    lines = []
    for line in [header, *rows]:
        first = line[0].ljust(widths[0])
        rest = [cell.rjust(w) for cell, w in zip(line[1:], widths[1:])]
        lines.append("  ".join([first, *rest]).rstrip())
    return "\n".join(lines)


def _format_metric_block(labels: list[str], accuracy: float, per_label: dict, support: dict) -> str:
    lines = [f"accuracy: {_fmt(accuracy)}"]
    width = max(len("label"), *(len(x) for x in labels))
    lines.append(f"{'label'.ljust(width)}  precision  recall    f1  support")
    for label in labels:
        m = per_label[label]
        lines.append(
            f"{label.ljust(width)}  {_fmt(m['precision']):>9}  {_fmt(m['recall']):>6}"
            f"  {_fmt(m['f1']):>4}  {support[label]:>7}"
        )
    return "\n".join(lines)


def format_test_payload(payload: dict) -> str:
    labels = list(_get(payload, "label_set"))
    return "\n".join([
        format_confusion(labels, _get(payload, "confusion")),
        "",
        _format_metric_block(labels, _get(payload, "accuracy"),
                             _get(payload, "per_label"), _get(payload, "support")),
    ])


def format_crossval_payload(payload: dict) -> str:
    labels = list(_get(payload, "label_set"))
    folds = _get(payload, "folds")
    size = len(labels)
    pooled = [[0] * size for _ in range(size)]
    for f in folds:
        for i in range(size):
            for j in range(size):
                pooled[i][j] += _get(f, "confusion")[i][j]
    lines = [f"{len(folds)}-fold cross-validation, pooled predictions:"]
    lines.append(format_confusion(labels, pooled))
    lines.append("")
    for f in folds:
        lines.append(f"fold {_get(f, 'fold')}: accuracy {_fmt(_get(f, 'accuracy'))}"
                     f" ({len(_get(f, 'validation_ids'))} accounts)")
    aggregate = _get(payload, "aggregate")
    acc = _get(aggregate, "accuracy")
    lines.append(f"mean accuracy {_fmt(acc['mean'])} (std {_fmt(acc['std'])})")
    lines.append("")
    width = max(len("label"), *(len(x) for x in labels))
    lines.append(f"{'label'.ljust(width)}  precision  recall    f1  (fold means)")
    per_label = _get(aggregate, "per_label")
    for label in labels:
        per = per_label[label]
        lines.append(
            f"{label.ljust(width)}  {_fmt(per['precision']['mean']):>9}"
            f"  {_fmt(per['recall']['mean']):>6}  {_fmt(per['f1']['mean']):>4}"
        )
    return "\n".join(lines)


def format_payload(payload: dict) -> str:
    """Render any stored report; cross-validation payloads carry "folds"."""
    if isinstance(payload, dict) and "folds" in payload:
        return format_crossval_payload(payload)
    return format_test_payload(payload)
