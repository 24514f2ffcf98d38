from .crossval import FoldError, cross_validate
from .metrics import (
    ConfusionMatrix,
    EmptyBatch,
    EvaluationError,
    LabelOutOfRange,
    MetricReport,
    PredictionBatch,
    aggregate_reports,
    compute_metrics,
    confusion,
    cross_entropy,
    mse,
)
from .report import EmptyReportSet, render_report
from .roc import RocCurve, SingleClassBatch, roc_auc, trapezoid_area

__all__ = [
    "ConfusionMatrix",
    "EmptyBatch",
    "EmptyReportSet",
    "EvaluationError",
    "FoldError",
    "LabelOutOfRange",
    "MetricReport",
    "PredictionBatch",
    "RocCurve",
    "SingleClassBatch",
    "aggregate_reports",
    "compute_metrics",
    "confusion",
    "cross_entropy",
    "cross_validate",
    "mse",
    "render_report",
    "roc_auc",
    "trapezoid_area",
]
