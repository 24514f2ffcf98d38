from .engine import (
    AugmentationConfig,
    AugmentationError,
    NoTransformsEnabled,
    TargetBelowOriginalCount,
    augment_class,
    augment_manifest,
)
from .preprocess import (
    DecodeError,
    NormalizedImage,
    PreprocessError,
    PreprocessSpec,
    ZeroDimension,
    denormalize,
    load_rgb,
    preprocess,
)
from .transforms import CATALOG, DEFAULT_RANGES, apply_transform

__all__ = [
    "CATALOG",
    "DEFAULT_RANGES",
    "AugmentationConfig",
    "AugmentationError",
    "DecodeError",
    "NoTransformsEnabled",
    "NormalizedImage",
    "PreprocessError",
    "PreprocessSpec",
    "TargetBelowOriginalCount",
    "ZeroDimension",
    "apply_transform",
    "augment_class",
    "augment_manifest",
    "denormalize",
    "load_rgb",
    "preprocess",
]
