"""Hyperparameter grid sweep with a deterministic selection rule.

Configurations are enumerated as the Cartesian product of the candidate
lists, in declared field order; the winner maximizes the selection metric on
validation, with ties broken by lower validation loss and then by
enumeration order.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Tuple

from ..models.classifier import ClassifierModel
from .trainer import TrainConfig, TrainingRun, evaluate_split, train

SELECTION_METRICS = ("f1", "accuracy")


class ConfigTrainingError(RuntimeError):
    """A grid candidate failed to train; carries the offending config."""

    def __init__(self, config: TrainConfig, cause: BaseException):
        super().__init__(f"training failed for {config}: {cause}")
        self.config = config


@dataclass(frozen=True)
class HyperGrid:
    learning_rates: tuple = (0.001, 0.0001, 1e-5, 2e-5)
    batch_sizes: tuple = (8, 16, 32)
    dropout_rates: tuple = (0.2, 0.3, 0.4)
    weight_decays: tuple = (1e-4, 1e-5)
    optimizers: tuple = ("adam", "adamw")
    selection_metric: str = "f1"

    def __post_init__(self):
        for name in ("learning_rates", "batch_sizes", "dropout_rates", "weight_decays", "optimizers"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be non-empty")
        if self.selection_metric not in SELECTION_METRICS:
            raise ValueError(f"selection_metric must be one of {SELECTION_METRICS}")

    def size(self) -> int:
        return (
            len(self.learning_rates)
            * len(self.batch_sizes)
            * len(self.dropout_rates)
            * len(self.weight_decays)
            * len(self.optimizers)
        )

    def configs(self, base: Optional[TrainConfig] = None) -> List[TrainConfig]:
        base = base or TrainConfig()
        out = []
        for lr, bs, dr, wd, opt in itertools.product(
            self.learning_rates,
            self.batch_sizes,
            self.dropout_rates,
            self.weight_decays,
            self.optimizers,
        ):
            out.append(
                replace(
                    base,
                    learning_rate=lr,
                    batch_size=bs,
                    dropout_rate=dr,
                    weight_decay=wd,
                    optimizer=opt,
                )
            )
        return out


@dataclass
class GridRunResult:
    config: TrainConfig
    run: TrainingRun
    metric_value: float
    val_loss: float


def grid_search(
    model_builder: Callable[[TrainConfig], ClassifierModel],
    grid: HyperGrid,
    train_set,
    val_set,
    *,
    base_config: Optional[TrainConfig] = None,
    budget: Optional[int] = None,
    seed: int = 0,
) -> Tuple[TrainConfig, List[GridRunResult]]:
    """Train every candidate config (optionally a seeded subsample) and pick one."""
    if budget is not None and budget < 1:
        raise ValueError("budget must be at least 1")
    configs = grid.configs(base_config)
    if budget is not None and budget < len(configs):
        keep = sorted(random.Random(seed).sample(range(len(configs)), budget))
        configs = [configs[i] for i in keep]

    results: List[GridRunResult] = []
    best_index = -1
    for index, cfg in enumerate(configs):
        model = model_builder(cfg)
        try:
            run = train(model, train_set, val_set, cfg)
        except Exception as exc:
            raise ConfigTrainingError(cfg, exc) from exc
        report, _batch = evaluate_split(model, val_set, batch_size=cfg.batch_size)
        value = report.f1 if grid.selection_metric == "f1" else report.accuracy
        results.append(GridRunResult(cfg, run, value, run.best_val_loss))
        if best_index < 0:
            best_index = index
            continue
        best = results[best_index]
        if value > best.metric_value or (
            value == best.metric_value and run.best_val_loss < best.val_loss
        ):
            best_index = index
    return results[best_index].config, results
