from .datasets import ManifestDataset
from .grid import ConfigTrainingError, GridRunResult, HyperGrid, grid_search
from .trainer import (
    EmptyTrainingSet,
    EmptyValidationSet,
    NonFiniteLoss,
    TrainConfig,
    TrainingRun,
    evaluate_split,
    train,
)

__all__ = [
    "ConfigTrainingError",
    "EmptyTrainingSet",
    "EmptyValidationSet",
    "GridRunResult",
    "HyperGrid",
    "ManifestDataset",
    "NonFiniteLoss",
    "TrainConfig",
    "TrainingRun",
    "evaluate_split",
    "grid_search",
    "train",
]
