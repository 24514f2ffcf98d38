"""Comparison-report rendering for evaluated models."""
from __future__ import annotations

from .metrics import MetricReport

COLUMNS = ("accuracy", "precision", "f1", "recall", "loss", "auc")
HEADER = ("Model name", "Accuracy", "Precision", "F1-score", "Recall", "Loss", "AUC")


class EmptyReportSet(Exception):
    pass


def _cell_values(report: MetricReport, loss_field: str) -> dict:
    d = report.to_dict()
    return {
        "accuracy": d["accuracy"],
        "precision": d["precision"],
        "f1": d["f1"],
        "recall": d["recall"],
        "loss": d[loss_field],
        "auc": d["auc"],
    }


def _best_per_column(rows: dict) -> dict:
    """Column -> best value (max everywhere except loss, where lower wins)."""
    best = {}
    for col in COLUMNS:
        values = [cells[col] for cells in rows.values()]
        best[col] = min(values) if col == "loss" else max(values)
    return best


def render_report(
    reports: dict, fmt: str = "csv", loss_field: str = "cross_entropy_loss"
) -> str:
    """One row per model in the comparison-table column order.

    fmt "csv" emits a plain parseable table with header
    `model,accuracy,precision,f1,recall,loss,auc`; "markdown" emits the same
    table with the best value per column in bold.
    """
    if not reports:
        raise EmptyReportSet("no model reports to render")
    if fmt not in ("csv", "markdown"):
        raise ValueError(f"unknown report format {fmt!r}")
    rows = {name: _cell_values(r, loss_field) for name, r in reports.items()}
    best = _best_per_column(rows)

    if fmt == "csv":
        lines = ["model," + ",".join(COLUMNS)]
        for name, cells in rows.items():
            lines.append(name + "," + ",".join(f"{cells[c]:.4f}" for c in COLUMNS))
        return "\n".join(lines) + "\n"

    lines = ["| " + " | ".join(HEADER) + " |"]
    lines.append("|" + "---|" * len(HEADER))
    for name, cells in rows.items():
        rendered = []
        for col in COLUMNS:
            text = f"{cells[col]:.4f}"
            if cells[col] == best[col]:
                text = f"**{text}**"
            rendered.append(text)
        lines.append("| " + " | ".join([name] + rendered) + " |")
    return "\n".join(lines) + "\n"
