"""ROC curve construction and trapezoidal AUC."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class SingleClassBatch(Exception):
    """Raised when an ROC curve is requested but only one class is present."""


@dataclass(frozen=True)
class RocCurve:
    """(FPR, TPR) points swept over descending score thresholds.

    Anchored at (0, 0) and (1, 1); both coordinate sequences are
    non-decreasing.
    """

    points: tuple  # ((fpr, tpr), ...)
    thresholds: tuple

    @property
    def fpr(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @property
    def tpr(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])


def roc_auc(scores, labels) -> tuple[RocCurve, float]:
    """ROC curve over distinct-score thresholds plus its trapezoidal area.

    At each threshold t (descending) a sample is predicted positive iff
    score >= t; AUC is the sum of (FPR_{i+1} - FPR_i) * (TPR_{i+1} + TPR_i) / 2
    along the curve.
    """
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels, dtype=int)
    n_pos = int(np.sum(labels == 1))
    n_neg = int(np.sum(labels == 0))
    if n_pos == 0 or n_neg == 0:
        raise SingleClassBatch("ROC needs both positive and negative samples")

    order = np.argsort(-scores, kind="stable")
    sorted_scores = scores[order]
    sorted_labels = labels[order]
    tp_cum = np.cumsum(sorted_labels == 1)
    fp_cum = np.cumsum(sorted_labels == 0)
    # keep one operating point per distinct score (the last index of each run)
    distinct = np.nonzero(np.diff(sorted_scores, append=-np.inf))[0]

    points = [(0.0, 0.0)]
    thresholds = []
    for i in distinct:
        points.append((float(fp_cum[i] / n_neg), float(tp_cum[i] / n_pos)))
        thresholds.append(float(sorted_scores[i]))
    if points[-1] != (1.0, 1.0):
        points.append((1.0, 1.0))

    auc = trapezoid_area(points)
    return RocCurve(tuple(points), tuple(thresholds)), auc


def trapezoid_area(points) -> float:
    """Trapezoidal sum over an (fpr, tpr) point list."""
    area = 0.0
    for (x0, y0), (x1, y1) in zip(points[:-1], points[1:]):
        area += (x1 - x0) * (y1 + y0) / 2.0
    return float(area)
