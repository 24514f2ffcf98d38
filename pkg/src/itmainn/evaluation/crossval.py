"""K-fold cross-validation: train on k-1 folds, test on the held-out fold.

A validation slice for early stopping is carved out of each fold's training
pool (stratified, seeded per fold); the held-out fold is never seen during
training. The aggregate report is the unweighted mean of the fold reports.
"""
from __future__ import annotations

from typing import Callable, List, Optional, Tuple

from ..data.manifest import DatasetManifest
from ..data.splits import FoldPlan, stratified_split
from ..seeds import derive_seed
from .metrics import MetricReport, aggregate_reports


class FoldError(RuntimeError):
    """Training or evaluation failed inside one fold."""

    def __init__(self, fold: int, cause: BaseException):
        super().__init__(f"fold {fold} failed: {cause}")
        self.fold = fold


def cross_validate(
    model_builder: Callable[[], "object"],
    manifest: DatasetManifest,
    fold_plan: FoldPlan,
    cfg,
    *,
    val_fraction: float = 0.1,
    run_dir=None,
) -> Tuple[List[MetricReport], MetricReport]:
    """Returns (per-fold reports, aggregate report)."""
    # imported here so metric-only users never pay the torch import
    from ..training.datasets import ManifestDataset
    from ..training.trainer import evaluate_split, train

    fold_reports: List[MetricReport] = []
    for fold in range(fold_plan.k):
        try:
            train_ids, test_ids = fold_plan.split_for_fold(fold)
            pool = manifest.subset(train_ids)
            carve = stratified_split(
                pool,
                test_fraction=val_fraction,
                seed=derive_seed(cfg.seed, f"fold{fold}/val"),
            )
            model = model_builder()
            spec = model.spec.preprocess
            train_ds = ManifestDataset(pool.subset(carve.train_ids), spec)
            val_ds = ManifestDataset(pool.subset(carve.test_ids), spec)
            test_ds = ManifestDataset(manifest.subset(test_ids), spec)
            fold_dir = None if run_dir is None else run_dir / f"fold{fold}"
            train(model, train_ds, val_ds, cfg, run_dir=fold_dir)
            report, _batch = evaluate_split(model, test_ds, batch_size=cfg.batch_size)
            fold_reports.append(report)
        except Exception as exc:
            raise FoldError(fold, exc) from exc
    return fold_reports, aggregate_reports(fold_reports)
