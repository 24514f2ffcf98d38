"""Backbone-specific image preprocessing: resize, rescale, normalize."""
from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError


class PreprocessError(Exception):
    pass


class DecodeError(PreprocessError):
    pass


class ZeroDimension(PreprocessError):
    pass


_RESAMPLE = {
    "nearest": Image.NEAREST,
    "bilinear": Image.BILINEAR,
    "bicubic": Image.BICUBIC,
}

FALLBACK_MEAN = (0.5, 0.5, 0.5)
FALLBACK_STD = (0.5, 0.5, 0.5)


@dataclass(frozen=True)
class PreprocessSpec:
    input_size: int
    normalization_mean: tuple = FALLBACK_MEAN
    normalization_std: tuple = FALLBACK_STD
    resize_interpolation: str = "bilinear"
    center_crop: bool = False

    def __post_init__(self):
        if self.input_size <= 0:
            raise ValueError("input_size must be positive")
        if any(s <= 0 for s in self.normalization_std):
            raise ValueError("std components must be positive")
        if self.resize_interpolation not in _RESAMPLE:
            raise ValueError(f"unknown interpolation {self.resize_interpolation!r}")

    def to_dict(self) -> dict:
        return {
            "input_size": self.input_size,
            "normalization_mean": list(self.normalization_mean),
            "normalization_std": list(self.normalization_std),
            "resize_interpolation": self.resize_interpolation,
            "center_crop": self.center_crop,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PreprocessSpec":
        return cls(
            input_size=d["input_size"],
            normalization_mean=tuple(d["normalization_mean"]),
            normalization_std=tuple(d["normalization_std"]),
            resize_interpolation=d["resize_interpolation"],
            center_crop=d["center_crop"],
        )


@dataclass(frozen=True)
class NormalizedImage:
    data: np.ndarray  # input_size x input_size x 3, (pixel/255 - mean) / std
    spec: PreprocessSpec


def load_rgb(source) -> Image.Image:
    """Decode a path, byte string, array, or PIL image into RGB."""
    if isinstance(source, Image.Image):
        return source.convert("RGB")
    if isinstance(source, np.ndarray):
        if source.ndim != 3 or source.shape[2] != 3:
            raise DecodeError(f"expected HxWx3 array, got shape {source.shape}")
        return Image.fromarray(source.astype(np.uint8), "RGB")
    if isinstance(source, (bytes, bytearray)):
        try:
            return Image.open(io.BytesIO(source)).convert("RGB")
        except (UnidentifiedImageError, OSError) as exc:
            raise DecodeError(f"cannot decode image bytes: {exc}") from exc
    try:
        return Image.open(Path(source)).convert("RGB")
    except (UnidentifiedImageError, OSError) as exc:
        raise DecodeError(f"cannot decode image {source}: {exc}") from exc


def preprocess(image, spec: PreprocessSpec) -> NormalizedImage:
    """Resize to the model input size, rescale to [0, 1], normalize per channel.

    Default is a direct (possibly aspect-changing) resize; with
    spec.center_crop the short side is resized first and a center crop taken.
    """
    img = load_rgb(image)
    w, h = img.size
    if w == 0 or h == 0:
        raise ZeroDimension(f"image has zero dimension: {w}x{h}")

    size = spec.input_size
    resample = _RESAMPLE[spec.resize_interpolation]
    if spec.center_crop:
        scale = size / min(w, h)
        img = img.resize((max(size, round(w * scale)), max(size, round(h * scale))), resample)
        left = (img.size[0] - size) // 2
        top = (img.size[1] - size) // 2
        img = img.crop((left, top, left + size, top + size))
    else:
        img = img.resize((size, size), resample)

    arr = np.asarray(img, dtype=np.float64) / 255.0
    mean = np.array(spec.normalization_mean, dtype=np.float64)
    std = np.array(spec.normalization_std, dtype=np.float64)
    return NormalizedImage(data=(arr - mean) / std, spec=spec)


def denormalize(norm: NormalizedImage) -> np.ndarray:
    """Recover 0-255 pixel values from a normalized array."""
    mean = np.array(norm.spec.normalization_mean, dtype=np.float64)
    std = np.array(norm.spec.normalization_std, dtype=np.float64)
    return (norm.data * std + mean) * 255.0
