"""Torch dataset adapters over dataset manifests."""
from __future__ import annotations

import numpy as np
import torch
from torch.utils.data import Dataset

from ..augment.preprocess import PreprocessSpec, preprocess
from ..data.manifest import DatasetManifest


class ManifestDataset(Dataset):
    """Loads, preprocesses, and labels the images of a manifest.

    Images are read from disk lazily; an optional in-memory cache keeps
    decoded tensors for small desk-scale datasets.
    """

    def __init__(
        self,
        manifest: DatasetManifest,
        spec: PreprocessSpec,
        cache: bool = False,
    ):
        self.images = list(manifest.images)
        self.spec = spec
        self._cache = {} if cache else None

    def __len__(self) -> int:
        return len(self.images)

    def labels(self) -> list:
        return [img.class_label for img in self.images]

    def __getitem__(self, index: int):
        if self._cache is not None and index in self._cache:
            return self._cache[index]
        record = self.images[index]
        normalized = preprocess(record.path, self.spec)
        tensor = torch.from_numpy(np.transpose(normalized.data, (2, 0, 1))).float()
        item = (tensor, record.class_label)
        if self._cache is not None:
            self._cache[index] = item
        return item
