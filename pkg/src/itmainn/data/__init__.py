from .manifest import (
    BINARY_CLASSES,
    MULTICLASS_CLASSES,
    ORIGIN_AUGMENTED,
    ORIGIN_ORIGINAL,
    DatasetError,
    DatasetLayout,
    DatasetManifest,
    LabeledImage,
    MissingClassDirectory,
    UndecodableImage,
    ingest_dataset,
)
from .splits import (
    ClassSmallerThanK,
    EmptyClass,
    FoldPlan,
    FractionOutOfRange,
    KTooSmall,
    SplitError,
    SplitPlan,
    make_folds,
    round_half_up,
    stratified_split,
    training_pool,
)

__all__ = [
    "BINARY_CLASSES",
    "MULTICLASS_CLASSES",
    "ORIGIN_AUGMENTED",
    "ORIGIN_ORIGINAL",
    "ClassSmallerThanK",
    "DatasetError",
    "DatasetLayout",
    "DatasetManifest",
    "EmptyClass",
    "FoldPlan",
    "FractionOutOfRange",
    "KTooSmall",
    "LabeledImage",
    "MissingClassDirectory",
    "SplitError",
    "SplitPlan",
    "UndecodableImage",
    "ingest_dataset",
    "make_folds",
    "round_half_up",
    "stratified_split",
    "training_pool",
]
