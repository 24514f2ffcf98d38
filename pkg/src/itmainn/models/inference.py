"""Batch inference producing metric-ready score batches."""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
import torch

from ..augment.preprocess import preprocess
from ..evaluation.metrics import PredictionBatch
from .classifier import ClassifierModel


def image_to_tensor(image, model: ClassifierModel) -> torch.Tensor:
    """Preprocess one image per the model's spec; returns CHW float tensor."""
    normalized = preprocess(image, model.spec.preprocess)
    return torch.from_numpy(np.transpose(normalized.data, (2, 0, 1))).float()


@torch.no_grad()
def predict_scores(
    model: ClassifierModel,
    images: Sequence,
    ids: Optional[Sequence[str]] = None,
    true_labels: Optional[Sequence[int]] = None,
    batch_size: int = 16,
    threshold: float = 0.5,
) -> PredictionBatch:
    """Run the model over raw images and collect per-class scores.

    ``true_labels`` defaults to zeros when unknown; callers that only need
    scores can ignore the label fields of the returned batch.
    """
    model.eval()
    tensors = [image_to_tensor(img, model) for img in images]
    chunks = []
    for start in range(0, len(tensors), batch_size):
        batch = torch.stack(tensors[start : start + batch_size])
        chunks.append(model.scores(batch).cpu().numpy())
    scores = np.concatenate(chunks, axis=0) if chunks else np.zeros((0, len(model.class_names)))
    if ids is None:
        ids = tuple(f"image-{i}" for i in range(len(images)))
    if true_labels is None:
        true_labels = np.zeros(len(images), dtype=np.int64)
    return PredictionBatch.from_scores(
        ids=tuple(ids),
        true_labels=np.asarray(true_labels, dtype=np.int64),
        scores=scores,
        threshold=threshold,
    )
