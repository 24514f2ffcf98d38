"""Geometric and photometric training-set transforms.

Every transform takes (image, rng, ranges) and returns the transformed image
plus the concrete parameters it sampled, so provenance sidecars can record
them. All sampling goes through the passed numpy Generator; the image math
itself is pure PIL/numpy/scipy, which keeps outputs byte-reproducible.
"""
from __future__ import annotations

import math

import numpy as np
from PIL import Image, ImageEnhance, ImageFilter, ImageOps
from scipy.ndimage import gaussian_filter, map_coordinates

# conservative defaults chosen to preserve lesion morphology; all overridable
DEFAULT_RANGES = {
    "rotation": {"degrees": (-30.0, 30.0)},
    "translation": {"fraction": (-0.1, 0.1)},
    "reflection": {},
    "shear": {"degrees": (-15.0, 15.0)},
    "color_adjust": {"hue_shift": (-0.1, 0.1), "saturation": (0.9, 1.1)},
    "noise": {"sigma": (0.01, 0.05)},
    "sharpen": {"factor": (1.2, 2.0)},
    "blur": {"kernel": (3, 5)},
    "elastic_deform": {"alpha": (20.0, 40.0), "sigma": (4.0, 6.0)},
    "brightness": {"factor": (0.7, 1.3)},
    "scale": {"factor": (0.85, 1.15)},
}

CATALOG = tuple(DEFAULT_RANGES)


def _uniform(rng: np.random.Generator, bounds) -> float:
    lo, hi = bounds
    return float(rng.uniform(lo, hi))


def _rotation(img, rng, ranges):
    angle = _uniform(rng, ranges["degrees"])
    return img.rotate(angle, resample=Image.BILINEAR, fillcolor=(0, 0, 0)), {"degrees": angle}


def _translation(img, rng, ranges):
    w, h = img.size
    tx = _uniform(rng, ranges["fraction"]) * w
    ty = _uniform(rng, ranges["fraction"]) * h
    out = img.transform(
        img.size, Image.AFFINE, (1, 0, -tx, 0, 1, -ty), resample=Image.BILINEAR, fillcolor=(0, 0, 0)
    )
    return out, {"tx_px": tx, "ty_px": ty}


def _reflection(img, rng, ranges):
    axis = "horizontal" if rng.integers(0, 2) == 0 else "vertical"
    out = ImageOps.mirror(img) if axis == "horizontal" else ImageOps.flip(img)
    return out, {"axis": axis}


def _shear(img, rng, ranges):
    degrees = _uniform(rng, ranges["degrees"])
    coeff = math.tan(math.radians(degrees))
    out = img.transform(
        img.size, Image.AFFINE, (1, coeff, 0, 0, 1, 0), resample=Image.BILINEAR, fillcolor=(0, 0, 0)
    )
    return out, {"degrees": degrees}


def _color_adjust(img, rng, ranges):
    hue_shift = _uniform(rng, ranges["hue_shift"])
    sat_factor = _uniform(rng, ranges["saturation"])
    hsv = np.asarray(img.convert("HSV"), dtype=np.float64)
    hsv[..., 0] = np.mod(hsv[..., 0] + hue_shift * 255.0, 256.0)
    hsv[..., 1] = np.clip(hsv[..., 1] * sat_factor, 0, 255)
    out = Image.fromarray(np.rint(hsv).astype(np.uint8), "HSV").convert("RGB")
    return out, {"hue_shift": hue_shift, "saturation": sat_factor}


def _noise(img, rng, ranges):
    sigma = _uniform(rng, ranges["sigma"])
    arr = np.asarray(img, dtype=np.float64) / 255.0
    arr = np.clip(arr + rng.normal(0.0, sigma, arr.shape), 0.0, 1.0)
    return Image.fromarray(np.rint(arr * 255.0).astype(np.uint8), "RGB"), {"sigma": sigma}


def _sharpen(img, rng, ranges):
    factor = _uniform(rng, ranges["factor"])
    return ImageEnhance.Sharpness(img).enhance(factor), {"factor": factor}


def _blur(img, rng, ranges):
    lo, hi = ranges["kernel"]
    # odd box kernels only: radius r gives a (2r+1)-pixel kernel
    radii = [r for r in range(1, hi // 2 + 1) if lo <= 2 * r + 1 <= hi]
    radius = int(radii[rng.integers(0, len(radii))])
    return img.filter(ImageFilter.BoxBlur(radius)), {"kernel": 2 * radius + 1}


def _elastic_deform(img, rng, ranges):
    alpha = _uniform(rng, ranges["alpha"])
    sigma = _uniform(rng, ranges["sigma"])
    arr = np.asarray(img, dtype=np.float64)
    h, w = arr.shape[:2]
    dx = gaussian_filter(rng.uniform(-1, 1, (h, w)), sigma) * alpha
    dy = gaussian_filter(rng.uniform(-1, 1, (h, w)), sigma) * alpha
    ys, xs = np.meshgrid(np.arange(h), np.arange(w), indexing="ij")
    coords = [ys + dy, xs + dx]
    warped = np.stack(
        [map_coordinates(arr[..., c], coords, order=1, mode="reflect") for c in range(3)],
        axis=-1,
    )
    out = Image.fromarray(np.rint(np.clip(warped, 0, 255)).astype(np.uint8), "RGB")
    return out, {"alpha": alpha, "sigma": sigma}


def _brightness(img, rng, ranges):
    factor = _uniform(rng, ranges["factor"])
    return ImageEnhance.Brightness(img).enhance(factor), {"factor": factor}


def _scale(img, rng, ranges):
    factor = _uniform(rng, ranges["factor"])
    w, h = img.size
    new_w, new_h = max(1, round(w * factor)), max(1, round(h * factor))
    resized = img.resize((new_w, new_h), Image.BILINEAR)
    if factor >= 1.0:
        left, top = (new_w - w) // 2, (new_h - h) // 2
        out = resized.crop((left, top, left + w, top + h))
    else:
        out = Image.new("RGB", (w, h), (0, 0, 0))
        out.paste(resized, ((w - new_w) // 2, (h - new_h) // 2))
    return out, {"factor": factor}


TRANSFORMS = {
    "rotation": _rotation,
    "translation": _translation,
    "reflection": _reflection,
    "shear": _shear,
    "color_adjust": _color_adjust,
    "noise": _noise,
    "sharpen": _sharpen,
    "blur": _blur,
    "elastic_deform": _elastic_deform,
    "brightness": _brightness,
    "scale": _scale,
}


def apply_transform(name: str, img: Image.Image, rng: np.random.Generator, ranges: dict):
    merged = dict(DEFAULT_RANGES[name])
    merged.update(ranges.get(name, {}))
    return TRANSFORMS[name](img, rng, merged)
