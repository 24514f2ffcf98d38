"""Seeded fine-tuning loop with early stopping on validation loss.

Only parameters left trainable by the freeze mask are optimized. The loop
tracks the best validation loss seen so far, stops after a configurable
number of epochs without improvement, and restores the best checkpoint into
the model before returning.
"""
from __future__ import annotations

import copy
import csv
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
import torch
from torch.utils.data import DataLoader

from ..evaluation.metrics import MetricReport, PredictionBatch, compute_metrics, confusion
from ..models.classifier import ClassifierModel
from ..models.heads import BINARY
from ..seeds import derive_seed

OPTIMIZERS = ("adam", "adamw")


class EmptyTrainingSet(ValueError):
    pass


class EmptyValidationSet(ValueError):
    pass


class NonFiniteLoss(RuntimeError):
    """Training diverged; message carries the offending epoch."""


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 2e-5
    batch_size: int = 16
    dropout_rate: float = 0.3
    weight_decay: float = 1e-5
    optimizer: str = "adamw"
    max_epochs: int = 50
    early_stop_patience: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.batch_size < 1:
            raise ValueError("batch_size must be at least 1")
        if not 0 <= self.dropout_rate < 1:
            raise ValueError("dropout_rate must be in [0, 1)")
        if self.optimizer not in OPTIMIZERS:
            raise ValueError(f"optimizer must be one of {OPTIMIZERS}")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be at least 1")
        if self.early_stop_patience < 1:
            raise ValueError("early_stop_patience must be at least 1")

    def to_dict(self) -> dict:
        return {
            "learning_rate": self.learning_rate,
            "batch_size": self.batch_size,
            "dropout_rate": self.dropout_rate,
            "weight_decay": self.weight_decay,
            "optimizer": self.optimizer,
            "max_epochs": self.max_epochs,
            "early_stop_patience": self.early_stop_patience,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "TrainConfig":
        known = {k: raw[k] for k in cls.__dataclass_fields__ if k in raw}
        return cls(**known)


@dataclass
class TrainingRun:
    epoch_log: list = field(default_factory=list)
    best_epoch: int = 0
    best_checkpoint: dict = field(default_factory=dict)
    stopped_early: bool = False
    wall_time_s: float = 0.0
    config: Optional[TrainConfig] = None

    @property
    def best_val_loss(self) -> float:
        return self.epoch_log[self.best_epoch - 1]["val_loss"]


def _make_optimizer(model: ClassifierModel, cfg: TrainConfig):
    params = model.trainable_parameters()
    if cfg.optimizer == "adam":
        return torch.optim.Adam(params, lr=cfg.learning_rate, weight_decay=cfg.weight_decay)
    return torch.optim.AdamW(params, lr=cfg.learning_rate, weight_decay=cfg.weight_decay)


def _batch_loss(model: ClassifierModel, x: torch.Tensor, y: torch.Tensor) -> torch.Tensor:
    """Summed (not averaged) loss so epoch means are exact across batches."""
    logits = model.logits(x)
    if model.head_spec.task == BINARY:
        return torch.nn.functional.binary_cross_entropy_with_logits(
            logits.squeeze(-1), y.float(), reduction="sum"
        )
    return torch.nn.functional.cross_entropy(logits, y.long(), reduction="sum")


@torch.no_grad()
def _eval_pass(model: ClassifierModel, loader: DataLoader) -> Tuple[float, np.ndarray, np.ndarray]:
    model.eval()
    total, count = 0.0, 0
    scores, labels = [], []
    for x, y in loader:
        total += float(_batch_loss(model, x, y))
        count += len(y)
        scores.append(model.scores(x).cpu().numpy())
        labels.append(np.asarray(y))
    return total / count, np.concatenate(scores), np.concatenate(labels)


def evaluate_split(
    model: ClassifierModel,
    dataset,
    batch_size: int = 32,
    threshold: float = 0.5,
) -> Tuple[MetricReport, PredictionBatch]:
    """Full metric report for a dataset, per the model's task."""
    loader = DataLoader(dataset, batch_size=batch_size, shuffle=False, num_workers=0)
    _loss, scores, labels = _eval_pass(model, loader)
    batch = PredictionBatch.from_scores(
        ids=tuple(f"sample-{i}" for i in range(len(labels))),
        true_labels=labels,
        scores=scores,
        threshold=threshold,
    )
    n_classes = len(model.class_names)
    averaging = "binary" if model.head_spec.task == BINARY else "weighted"
    report = compute_metrics(confusion(batch, n_classes), batch, averaging)
    return report, batch


def train(
    model: ClassifierModel,
    train_set,
    val_set,
    cfg: TrainConfig,
    run_dir: Optional[Path] = None,
) -> TrainingRun:
    """Fine-tune the model and restore its best-validation-loss checkpoint."""
    if len(train_set) == 0:
        raise EmptyTrainingSet("training set has no samples")
    if val_set is None or len(val_set) == 0:
        raise EmptyValidationSet("early stopping needs a non-empty validation set")

    started = time.monotonic()
    run = TrainingRun(config=cfg)
    with torch.random.fork_rng(devices=[]):
        torch.manual_seed(derive_seed(cfg.seed, "train"))
        loader_rng = torch.Generator()
        loader_rng.manual_seed(derive_seed(cfg.seed, "loader"))
        train_loader = DataLoader(
            train_set,
            batch_size=cfg.batch_size,
            shuffle=True,
            generator=loader_rng,
            num_workers=0,
        )
        val_loader = DataLoader(val_set, batch_size=cfg.batch_size, shuffle=False, num_workers=0)
        optimizer = _make_optimizer(model, cfg)

        best_val = float("inf")
        best_state = None
        epochs_since_best = 0
        for epoch in range(1, cfg.max_epochs + 1):
            model.train()
            total, count = 0.0, 0
            for x, y in train_loader:
                optimizer.zero_grad()
                loss = _batch_loss(model, x, y)
                if not torch.isfinite(loss):
                    raise NonFiniteLoss(f"non-finite training loss at epoch {epoch}")
                (loss / len(y)).backward()
                optimizer.step()
                total += float(loss.detach())
                count += len(y)
            train_loss = total / count

            val_loss, scores, labels = _eval_pass(model, val_loader)
            if not np.isfinite(val_loss):
                raise NonFiniteLoss(f"non-finite validation loss at epoch {epoch}")
            if model.head_spec.task == BINARY:
                predicted = (scores[:, 1] >= 0.5).astype(int)
            else:
                predicted = scores.argmax(axis=1)
            val_accuracy = float((predicted == labels).mean())

            run.epoch_log.append(
                {
                    "epoch": epoch,
                    "train_loss": train_loss,
                    "val_loss": val_loss,
                    "val_accuracy": val_accuracy,
                }
            )
            if val_loss < best_val:
                best_val = val_loss
                run.best_epoch = epoch
                best_state = copy.deepcopy(model.state_dict())
                epochs_since_best = 0
            else:
                epochs_since_best += 1
                if epochs_since_best >= cfg.early_stop_patience:
                    run.stopped_early = True
                    break

    model.load_state_dict(best_state)
    model.epochs_trained += len(run.epoch_log)
    run.best_checkpoint = best_state
    run.wall_time_s = time.monotonic() - started
    if run_dir is not None:
        _write_run_artifacts(Path(run_dir), cfg, run)
    return run


def _write_run_artifacts(run_dir: Path, cfg: TrainConfig, run: TrainingRun) -> None:
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / "config.json").write_text(json.dumps(cfg.to_dict(), indent=2))
    with (run_dir / "epoch_log.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["epoch", "train_loss", "val_loss", "val_acc"])
        for row in run.epoch_log:
            writer.writerow(
                [row["epoch"], row["train_loss"], row["val_loss"], row["val_accuracy"]]
            )
    torch.save(run.best_checkpoint, run_dir / "best.pt")
