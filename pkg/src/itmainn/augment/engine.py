"""Training-set expansion to per-class target counts."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image

from ..data.manifest import ORIGIN_AUGMENTED, DatasetManifest, LabeledImage
from ..seeds import derive_seed
from .preprocess import load_rgb
from .transforms import CATALOG, apply_transform


class AugmentationError(Exception):
    pass


class TargetBelowOriginalCount(AugmentationError):
    pass


class NoTransformsEnabled(AugmentationError):
    pass


@dataclass
class AugmentationConfig:
    enabled_transforms: tuple = CATALOG
    parameter_ranges: dict = field(default_factory=dict)
    target_count_per_class: dict = field(default_factory=dict)  # class name -> total
    seed: int = 0
    output_root: str = "augmented"
    min_transforms: int = 1
    max_transforms: int = 3

    def __post_init__(self):
        unknown = set(self.enabled_transforms) - set(CATALOG)
        if unknown:
            raise ValueError(f"unknown transforms: {sorted(unknown)}")
        if self.min_transforms < 1:
            # zero transforms would emit exact duplicates of the source
            raise ValueError("min_transforms must be at least 1")
        if self.max_transforms < self.min_transforms:
            raise ValueError("max_transforms must be >= min_transforms")
        for name, ranges in self.parameter_ranges.items():
            for key, bounds in ranges.items():
                if len(bounds) == 2 and bounds[0] > bounds[1]:
                    raise ValueError(f"range min > max for {name}.{key}: {bounds}")

    def to_dict(self) -> dict:
        return {
            "enabled_transforms": list(self.enabled_transforms),
            "parameter_ranges": self.parameter_ranges,
            "target_count_per_class": self.target_count_per_class,
            "seed": self.seed,
            "output_root": str(self.output_root),
            "min_transforms": self.min_transforms,
            "max_transforms": self.max_transforms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AugmentationConfig":
        cfg = cls()
        for key in (
            "parameter_ranges",
            "target_count_per_class",
            "seed",
            "output_root",
            "min_transforms",
            "max_transforms",
        ):
            if key in d:
                setattr(cfg, key, d[key])
        if "enabled_transforms" in d:
            cfg.enabled_transforms = tuple(d["enabled_transforms"])
        cfg.__post_init__()
        return cfg


def _augment_one(img: Image.Image, rng: np.random.Generator, config: AugmentationConfig):
    """Apply 1-3 sampled transforms in catalog order; returns (image, records)."""
    enabled = [t for t in CATALOG if t in config.enabled_transforms]
    hi = min(config.max_transforms, len(enabled))
    count = int(rng.integers(config.min_transforms, hi + 1))
    chosen_idx = rng.choice(len(enabled), size=count, replace=False)
    chosen = [enabled[i] for i in sorted(chosen_idx)]
    records = []
    for name in chosen:
        img, params = apply_transform(name, img, rng, config.parameter_ranges)
        records.append({"name": name, "params": params})
    return img, records


def augment_class(
    images: list,
    class_target: int,
    config: AugmentationConfig,
    out_dir=None,
) -> list:
    """Generate class_target - len(images) augmented copies of one class.

    Sources are cycled round-robin so per-source augmentation counts differ
    by at most 1. Each output PNG gets a sidecar JSON recording its source,
    the transforms applied, and the per-image seed.
    """
    if not images:
        raise AugmentationError("cannot augment an empty class")
    labels = {img.class_label for img in images}
    if len(labels) != 1:
        raise AugmentationError(f"augment_class expects one class, got labels {sorted(labels)}")
    label = labels.pop()
    n_new = class_target - len(images)
    if n_new < 0:
        raise TargetBelowOriginalCount(
            f"target {class_target} below original count {len(images)}"
        )
    if n_new == 0:
        return []
    if not config.enabled_transforms:
        raise NoTransformsEnabled("target exceeds originals but no transforms are enabled")

    out_dir = Path(out_dir if out_dir is not None else config.output_root)
    out_dir.mkdir(parents=True, exist_ok=True)

    new_images = []
    for i in range(n_new):
        source = images[i % len(images)]
        stem = Path(source.path).stem
        filename = f"{stem}_aug{i:04d}.png"
        image_id = f"{ORIGIN_AUGMENTED}:{label}:{filename}"
        child_seed = derive_seed(config.seed, image_id)
        rng = np.random.default_rng(child_seed)

        img, records = _augment_one(load_rgb(source.path), rng, config)
        out_path = out_dir / filename
        img.save(out_path, format="PNG")
        sidecar = {"source_id": source.id, "transforms": records, "seed": child_seed}
        out_path.with_suffix(".json").write_text(json.dumps(sidecar, indent=2))

        new_images.append(
            LabeledImage(
                id=image_id,
                path=str(out_path),
                class_label=label,
                origin=ORIGIN_AUGMENTED,
                source_id=source.id,
            )
        )
    return new_images


def augment_manifest(
    manifest: DatasetManifest, config: AugmentationConfig, layout=None
) -> DatasetManifest:
    """Expand every targeted class and return the merged manifest.

    Targets in config.target_count_per_class are total per-class counts
    (originals plus augmented). Outputs land under
    `<output_root>/<class folder>/`, mirroring the dataset layout when one
    is given.
    """
    originals = manifest.originals()
    per_class = originals.by_class()
    folder_names = {
        name: (dict(layout.class_folders)[name] if layout is not None else name)
        for name in manifest.class_names
    }

    new_images = []
    for label, imgs in per_class.items():
        class_name = manifest.class_names[label]
        target = config.target_count_per_class.get(class_name)
        if target is None:
            continue
        out_dir = Path(config.output_root) / folder_names[class_name]
        new_images.extend(augment_class(imgs, target, config, out_dir=out_dir))

    merged = DatasetManifest(
        manifest.task, manifest.class_names, originals.images + tuple(new_images)
    )
    return merged
