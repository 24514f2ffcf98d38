"""Classification metrics derived from confusion-matrix counts.

All computations are plain numpy over immutable value objects, so they can
be checked against brute-force recounts in the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .roc import SingleClassBatch, roc_auc


class EvaluationError(Exception):
    pass


class EmptyBatch(EvaluationError):
    pass


class LabelOutOfRange(EvaluationError):
    pass


@dataclass(frozen=True)
class PredictionBatch:
    """True labels, hard predictions and per-class probability rows."""

    ids: tuple
    true_labels: np.ndarray
    predicted_labels: np.ndarray
    scores: np.ndarray  # shape (n, n_classes); binary stored as [1-p, p]

    def __post_init__(self):
        n = len(self.ids)
        if not (len(self.true_labels) == len(self.predicted_labels) == self.scores.shape[0] == n):
            raise ValueError("batch fields must have equal length")
        if n > 0:
            row_sums = self.scores.sum(axis=1)
            if np.max(np.abs(row_sums - 1.0)) > 1e-6:
                raise ValueError("score rows must sum to 1 within 1e-6")

    @property
    def n_classes(self) -> int:
        return self.scores.shape[1]

    def __len__(self) -> int:
        return len(self.ids)

    @classmethod
    def from_scores(cls, scores, true_labels, ids=None, threshold: float = 0.5) -> "PredictionBatch":
        """Build a batch from probability rows, deriving hard labels.

        Binary batches (2 columns) use `score >= threshold` on the positive
        class; multiclass batches use argmax.
        """
        scores = np.asarray(scores, dtype=float)
        true_labels = np.asarray(true_labels, dtype=int)
        if scores.ndim == 1:  # positive-class probabilities
            scores = np.stack([1.0 - scores, scores], axis=1)
        if scores.shape[1] == 2:
            predicted = (scores[:, 1] >= threshold).astype(int)
        else:
            predicted = np.argmax(scores, axis=1)
        if ids is None:
            ids = tuple(str(i) for i in range(len(true_labels)))
        return cls(tuple(ids), true_labels, predicted, scores)


@dataclass(frozen=True)
class ConfusionMatrix:
    """C x C count matrix; rows are true classes, columns predicted."""

    counts: np.ndarray

    def __post_init__(self):
        c = self.counts
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ValueError("counts must be square")
        if (c < 0).any():
            raise ValueError("counts must be non-negative")

    @property
    def n_classes(self) -> int:
        return self.counts.shape[0]

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def tp(self, c: int) -> int:
        return int(self.counts[c, c])

    def fn(self, c: int) -> int:
        return int(self.counts[c, :].sum() - self.counts[c, c])

    def fp(self, c: int) -> int:
        return int(self.counts[:, c].sum() - self.counts[c, c])

    def tn(self, c: int) -> int:
        return self.total - self.tp(c) - self.fn(c) - self.fp(c)

    def support(self, c: int) -> int:
        return int(self.counts[c, :].sum())


@dataclass
class MetricReport:
    """Scalar metrics for one evaluated model/batch."""

    accuracy: float
    precision: float
    recall: float
    f1: float
    auc: float
    cross_entropy_loss: float
    mse_loss: float
    averaging: str
    n_samples: int
    zero_division_classes: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "auc": self.auc,
            "cross_entropy_loss": self.cross_entropy_loss,
            "mse_loss": self.mse_loss,
            "averaging": self.averaging,
            "n_samples": self.n_samples,
            "zero_division_classes": list(self.zero_division_classes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MetricReport":
        return cls(
            accuracy=d["accuracy"],
            precision=d["precision"],
            recall=d["recall"],
            f1=d["f1"],
            auc=d["auc"],
            cross_entropy_loss=d["cross_entropy_loss"],
            mse_loss=d["mse_loss"],
            averaging=d["averaging"],
            n_samples=d["n_samples"],
            zero_division_classes=tuple(d.get("zero_division_classes", ())),
        )


def confusion(batch: PredictionBatch, n_classes: int) -> ConfusionMatrix:
    """Count matrix with counts[i][j] = #{k : y_k = i and yhat_k = j}."""
    if len(batch) == 0:
        raise EmptyBatch("cannot build a confusion matrix from an empty batch")
    y, yhat = batch.true_labels, batch.predicted_labels
    for name, arr in (("true", y), ("predicted", yhat)):
        bad = (arr < 0) | (arr >= n_classes)
        if bad.any():
            raise LabelOutOfRange(
                f"{name} label {int(arr[bad][0])} outside [0, {n_classes})"
            )
    counts = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(counts, (y, yhat), 1)
    return ConfusionMatrix(counts)


def _safe_div(num: float, den: float) -> float:
    return num / den if den != 0 else 0.0


def _per_class_prf(cm: ConfusionMatrix):
    """Per-class one-vs-rest precision/recall/F1 plus zero-division flags."""
    precisions, recalls, f1s, flagged = [], [], [], []
    for c in range(cm.n_classes):
        tp, fp, fn = cm.tp(c), cm.fp(c), cm.fn(c)
        if tp + fp == 0:
            flagged.append(c)
        pr = _safe_div(tp, tp + fp)
        rc = _safe_div(tp, tp + fn)
        f1 = _safe_div(2.0 * pr * rc, pr + rc)
        precisions.append(pr)
        recalls.append(rc)
        f1s.append(f1)
    return np.array(precisions), np.array(recalls), np.array(f1s), tuple(flagged)


def cross_entropy(batch: PredictionBatch, eps: float = 1e-12) -> float:
    """Mean negative log-likelihood of the true class under the score rows."""
    p_true = batch.scores[np.arange(len(batch)), batch.true_labels]
    return float(-np.mean(np.log(np.clip(p_true, eps, None))))


def mse(batch: PredictionBatch) -> float:
    """Mean squared error between one-hot labels and score rows.

    Averaged over every (sample, class) entry; for two-class rows summing
    to 1 this equals the scalar (y - p)^2 form on the positive class.
    """
    onehot = np.zeros_like(batch.scores)
    onehot[np.arange(len(batch)), batch.true_labels] = 1.0
    return float(np.mean((onehot - batch.scores) ** 2))


def compute_metrics(
    cm: ConfusionMatrix, batch: PredictionBatch, averaging: str = "weighted"
) -> MetricReport:
    """Accuracy, PR/RC/F1 (per `averaging`), AUC, and both loss diagnostics.

    averaging: "binary" reports the positive class (index 1); "weighted"
    averages one-vs-rest values with class-support weights; "macro" averages
    them uniformly. A class never predicted contributes precision 0 and is
    flagged rather than raising.
    """
    if cm.total != len(batch):
        raise ValueError("confusion matrix and batch disagree on sample count")
    if averaging not in ("binary", "weighted", "macro"):
        raise ValueError(f"unknown averaging {averaging!r}")
    n = cm.total
    accuracy = float(np.trace(cm.counts)) / n

    pr_c, rc_c, f1_c, flagged = _per_class_prf(cm)
    if averaging == "binary":
        if cm.n_classes != 2:
            raise ValueError("binary averaging requires exactly 2 classes")
        precision, recall, f1 = float(pr_c[1]), float(rc_c[1]), float(f1_c[1])
    elif averaging == "weighted":
        weights = np.array([cm.support(c) for c in range(cm.n_classes)], dtype=float) / n
        precision = float(np.dot(weights, pr_c))
        recall = float(np.dot(weights, rc_c))
        f1 = float(np.dot(weights, f1_c))
    else:
        precision = float(np.mean(pr_c))
        recall = float(np.mean(rc_c))
        f1 = float(np.mean(f1_c))

    auc = _auc_for_batch(batch, averaging)
    return MetricReport(
        accuracy=accuracy,
        precision=precision,
        recall=recall,
        f1=f1,
        auc=auc,
        cross_entropy_loss=cross_entropy(batch),
        mse_loss=mse(batch),
        averaging=averaging,
        n_samples=n,
        zero_division_classes=flagged,
    )


def _auc_for_batch(batch: PredictionBatch, averaging: str) -> float:
    """Binary AUC, or support-weighted one-vs-rest AUC for multiclass."""
    y = batch.true_labels
    if batch.n_classes == 2 and averaging == "binary":
        _, auc = roc_auc(batch.scores[:, 1], y)
        return auc
    present = [c for c in range(batch.n_classes) if np.any(y == c)]
    if len(present) < 2:
        raise SingleClassBatch("AUC requires at least two classes in the batch")
    aucs, weights = [], []
    for c in present:
        _, auc = roc_auc(batch.scores[:, c], (y == c).astype(int))
        aucs.append(auc)
        weights.append(float(np.sum(y == c)))
    weights = np.array(weights) / len(batch)
    if averaging == "macro":
        return float(np.mean(aucs))
    return float(np.dot(weights, aucs))


def aggregate_reports(reports: Sequence[MetricReport]) -> MetricReport:
    """Unweighted mean of per-fold reports (cross-validation aggregate)."""
    if not reports:
        raise EmptyBatch("no reports to aggregate")
    fields = ("accuracy", "precision", "recall", "f1", "auc", "cross_entropy_loss", "mse_loss")
    means = {f: float(np.mean([getattr(r, f) for r in reports])) for f in fields}
    return MetricReport(
        averaging=reports[0].averaging,
        n_samples=int(sum(r.n_samples for r in reports)),
        zero_division_classes=tuple(
            sorted({c for r in reports for c in r.zero_division_classes})
        ),
        **means,
    )
