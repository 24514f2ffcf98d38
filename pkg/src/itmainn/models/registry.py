"""Registry of the nine supported backbone architectures.

Each entry records where pretrained weights come from, the expected input
resolution, the feature width, and the default freeze boundary. Backbones
fall into two freeze families: convolutional networks train only their last
stage by default, transformer networks train only their final two encoder
blocks. The boundary names the first *trainable* layer group; every group
before it is frozen.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Optional

from ..augment.preprocess import PreprocessSpec
from .backbones import (
    MobileViT,
    TNT,
    FeatureBackbone,
    resnet_vit_small,
    vit_hybrid_base,
)
from .backbones.standard import EfficientNetB0, ResNet50, SwinT, Vgg16, VitB16
from .providers import WeightProvider, default_provider

FALLBACK_MEAN = (0.5, 0.5, 0.5)
FALLBACK_STD = (0.5, 0.5, 0.5)


class UnknownBackbone(KeyError):
    pass


@dataclass(frozen=True)
class BackboneSpec:
    name: str
    weight_source_id: str
    input_size: int
    feature_dim: int
    freeze_boundary: str
    preprocess: PreprocessSpec

    def __post_init__(self):
        if self.feature_dim <= 0:
            raise ValueError("feature_dim must be positive")


@dataclass(frozen=True)
class _Entry:
    factory: Callable[[], FeatureBackbone]
    family: str  # "cnn" or "transformer"
    weight_source_id: str
    input_size: int
    feature_dim: int
    default_boundary: str


_ENTRIES = {
    "vit": _Entry(VitB16, "transformer", "torchvision/vit_b_16", 224, 768, "block10"),
    "tnt": _Entry(TNT, "transformer", "local/tnt_s", 224, 384, "block10"),
    "swin": _Entry(SwinT, "transformer", "torchvision/swin_t", 224, 768, "block10"),
    "mobilevit": _Entry(MobileViT, "cnn", "local/mobilevit_s", 256, 640, "stage5"),
    "vit_hybrid": _Entry(
        vit_hybrid_base, "transformer", "local/vit_hybrid_r50", 224, 768, "block10"
    ),
    "resnet_vit": _Entry(
        resnet_vit_small, "transformer", "local/resnet_vit_r50", 224, 384, "block6"
    ),
    "vgg16": _Entry(Vgg16, "cnn", "torchvision/vgg16", 224, 4096, "stage5"),
    "resnet50": _Entry(ResNet50, "cnn", "torchvision/resnet50", 224, 2048, "stage4"),
    "efficientnet_b0": _Entry(
        EfficientNetB0, "cnn", "torchvision/efficientnet_b0", 224, 1280, "stage7"
    ),
}


def backbone_names() -> tuple:
    return tuple(_ENTRIES)


def _entry(name: str) -> _Entry:
    try:
        return _ENTRIES[name]
    except KeyError:
        known = ", ".join(sorted(_ENTRIES))
        raise UnknownBackbone(f"unknown backbone {name!r}; known: {known}") from None


def get_spec(name: str, provider: Optional[WeightProvider] = None) -> BackboneSpec:
    """Resolve a backbone name to its spec.

    Normalization statistics are taken from the weight provider's metadata
    when available and fall back to mean=std=(0.5, 0.5, 0.5).
    """
    entry = _entry(name)
    mean, std = FALLBACK_MEAN, FALLBACK_STD
    meta = (provider or default_provider()).metadata(entry.weight_source_id)
    if meta is not None:
        if meta.normalization_mean:
            mean = tuple(meta.normalization_mean)
        if meta.normalization_std:
            std = tuple(meta.normalization_std)
    return BackboneSpec(
        name=name,
        weight_source_id=entry.weight_source_id,
        input_size=entry.input_size,
        feature_dim=entry.feature_dim,
        freeze_boundary=entry.default_boundary,
        preprocess=PreprocessSpec(
            input_size=entry.input_size,
            normalization_mean=mean,
            normalization_std=std,
        ),
    )


def with_boundary(spec: BackboneSpec, boundary: str) -> BackboneSpec:
    return replace(spec, freeze_boundary=boundary)


def build_raw(name: str) -> FeatureBackbone:
    """Instantiate the architecture with randomly initialized weights."""
    return _entry(name).factory()


def family_of(name: str) -> str:
    return _entry(name).family
