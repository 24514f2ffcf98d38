"""Stratified train/val/test splits and k-fold partitions over manifests.

Only original images are ever allocated; augmented images stay out of
validation and test sets by construction.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .manifest import DatasetManifest


class SplitError(Exception):
    pass


class EmptyClass(SplitError):
    pass


class FractionOutOfRange(SplitError):
    pass


class KTooSmall(SplitError):
    pass


class ClassSmallerThanK(SplitError):
    pass


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


_ALLOCATION_RULES = {
    "half_up": round_half_up,
    "ceil": lambda x: int(math.ceil(x)),
    "floor": lambda x: int(math.floor(x)),
}


@dataclass(frozen=True)
class SplitPlan:
    train_ids: tuple
    val_ids: tuple
    test_ids: tuple
    test_fraction: float
    val_fraction: float
    seed: int

    def to_dict(self) -> dict:
        return {
            "train_ids": list(self.train_ids),
            "val_ids": list(self.val_ids),
            "test_ids": list(self.test_ids),
            "test_fraction": self.test_fraction,
            "val_fraction": self.val_fraction,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SplitPlan":
        return cls(
            tuple(d["train_ids"]),
            tuple(d["val_ids"]),
            tuple(d["test_ids"]),
            d["test_fraction"],
            d["val_fraction"],
            d["seed"],
        )


@dataclass(frozen=True)
class FoldPlan:
    k: int
    folds: tuple  # k tuples of ids
    seed: int

    def split_for_fold(self, i: int) -> tuple:
        """(train_ids, test_ids) with fold i held out."""
        test = self.folds[i]
        train = tuple(x for j, f in enumerate(self.folds) if j != i for x in f)
        return train, test

    def to_dict(self) -> dict:
        return {"k": self.k, "folds": [list(f) for f in self.folds], "seed": self.seed}

    @classmethod
    def from_dict(cls, d: dict) -> "FoldPlan":
        return cls(d["k"], tuple(tuple(f) for f in d["folds"]), d["seed"])


def _shuffled_ids_by_class(manifest: DatasetManifest, rng: random.Random) -> list:
    """Per-class original-image id lists, each shuffled under the shared rng."""
    per_class = manifest.originals().by_class()
    out = []
    for label in sorted(per_class):
        ids = [img.id for img in per_class[label]]
        ids.sort()
        rng.shuffle(ids)
        out.append(ids)
    return out


def stratified_split(
    manifest: DatasetManifest,
    test_fraction: float,
    val_fraction: float = 0.0,
    seed: int = 0,
    rounding: str = "half_up",
) -> SplitPlan:
    """Seeded per-class allocation of originals into train/val/test.

    Each class contributes round(test_fraction * n_c) ids to the test set
    (rounding rule configurable, half-up by default); the validation set is
    carved from each class's remaining train pool with val_fraction the same
    way; everything else is train.
    """
    for name, frac in (("test_fraction", test_fraction), ("val_fraction", val_fraction)):
        if not (0.0 <= frac < 1.0):
            raise FractionOutOfRange(f"{name} must be in [0, 1), got {frac}")
    allocate = _ALLOCATION_RULES.get(rounding)
    if allocate is None:
        raise ValueError(f"unknown rounding rule {rounding!r}")

    rng = random.Random(seed)
    train_ids, val_ids, test_ids = [], [], []
    for label, ids in enumerate(_shuffled_ids_by_class(manifest, rng)):
        if not ids:
            raise EmptyClass(f"class {manifest.class_names[label]!r} has no original images")
        n_test = allocate(test_fraction * len(ids)) if test_fraction > 0 else 0
        remaining = ids[n_test:]
        n_val = allocate(val_fraction * len(remaining)) if val_fraction > 0 else 0
        test_ids.extend(ids[:n_test])
        val_ids.extend(remaining[:n_val])
        train_ids.extend(remaining[n_val:])

    return SplitPlan(
        train_ids=tuple(train_ids),
        val_ids=tuple(val_ids),
        test_ids=tuple(test_ids),
        test_fraction=test_fraction,
        val_fraction=val_fraction,
        seed=seed,
    )


def training_pool(manifest: DatasetManifest, plan: SplitPlan) -> DatasetManifest:
    """Train originals plus the augmented images derived from them.

    Augmented entries whose source sits in val or test (or has no recorded
    source) are dropped, so no information from held-out images reaches
    training.
    """
    train = set(plan.train_ids)
    keep = tuple(
        img
        for img in manifest.images
        if (img.id in train) or (img.origin == "augmented" and img.source_id in train)
    )
    return DatasetManifest(manifest.task, manifest.class_names, keep)


def make_folds(manifest: DatasetManifest, k: int, seed: int = 0) -> FoldPlan:
    """Seeded stratified k-fold partition of the original images.

    Per class, shuffled ids are dealt round-robin across folds; the folds
    receiving a class's remainder are the currently smallest ones, so both
    per-class and total fold sizes differ by at most 1.
    """
    if k < 2:
        raise KTooSmall(f"k must be >= 2, got {k}")
    rng = random.Random(seed)
    fold_ids = [[] for _ in range(k)]
    for label, ids in enumerate(_shuffled_ids_by_class(manifest, rng)):
        if len(ids) < k:
            raise ClassSmallerThanK(
                f"class {manifest.class_names[label]!r} has {len(ids)} originals, fewer than k={k}"
            )
        base, extra = divmod(len(ids), k)
        # smallest folds first so class remainders keep totals balanced
        order = sorted(range(k), key=lambda f: (len(fold_ids[f]), f))
        cursor = 0
        for rank, f in enumerate(order):
            take = base + (1 if rank < extra else 0)
            fold_ids[f].extend(ids[cursor : cursor + take])
            cursor += take

    return FoldPlan(k=k, folds=tuple(tuple(f) for f in fold_ids), seed=seed)
