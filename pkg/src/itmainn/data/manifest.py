"""Dataset ingestion: directory layouts to manifests.

Expected layout: `<root>/<original_folder>/<class folder>/*.{jpg,png}` with an
optional sibling `<augmented_folder>` mirroring the class folders. Folder
names are configurable per dataset release.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from PIL import Image, UnidentifiedImageError

log = logging.getLogger(__name__)

IMAGE_EXTENSIONS = (".jpg", ".jpeg", ".png", ".bmp", ".webp")

ORIGIN_ORIGINAL = "original"
ORIGIN_AUGMENTED = "augmented"

BINARY_CLASSES = ("Other", "Monkeypox")
MULTICLASS_CLASSES = ("Monkeypox", "Chickenpox", "Measles", "Cowpox", "HFMD", "Healthy")


class DatasetError(Exception):
    pass


class MissingClassDirectory(DatasetError):
    pass


class UndecodableImage(DatasetError):
    pass


@dataclass(frozen=True)
class LabeledImage:
    id: str
    path: str
    class_label: int
    origin: str  # "original" | "augmented"
    source_id: str | None = None  # originating image id for augmented entries


@dataclass(frozen=True)
class DatasetLayout:
    """Maps on-disk folder names to the manifest's class order."""

    original_folder: str
    augmented_folder: str
    class_folders: tuple  # ((class_name, folder_name), ...) in label order

    @classmethod
    def binary_default(cls) -> "DatasetLayout":
        # class 1 is the disease so recall reads as sensitivity
        return cls(
            original_folder="Original Images",
            augmented_folder="Augmented Images",
            class_folders=(("Other", "Others"), ("Monkeypox", "Monkey Pox")),
        )

    @classmethod
    def multiclass_default(cls) -> "DatasetLayout":
        return cls(
            original_folder="Original Images",
            augmented_folder="Augmented Images",
            class_folders=tuple((name, name) for name in MULTICLASS_CLASSES),
        )

    @classmethod
    def for_task(cls, task: str) -> "DatasetLayout":
        if task == "binary":
            return cls.binary_default()
        if task == "multiclass":
            return cls.multiclass_default()
        raise ValueError(f"unknown task {task!r}")

    @classmethod
    def from_dict(cls, d: dict) -> "DatasetLayout":
        return cls(
            original_folder=d["original_folder"],
            augmented_folder=d["augmented_folder"],
            class_folders=tuple((c, f) for c, f in d["class_folders"]),
        )

    def to_dict(self) -> dict:
        return {
            "original_folder": self.original_folder,
            "augmented_folder": self.augmented_folder,
            "class_folders": [list(pair) for pair in self.class_folders],
        }


@dataclass
class DatasetManifest:
    task: str  # "binary" | "multiclass"
    class_names: tuple
    images: tuple  # LabeledImage, ordered lexicographically by path

    def __post_init__(self):
        expected = {"binary": 2, "multiclass": 6}.get(self.task)
        if expected is not None and len(self.class_names) != expected:
            raise ValueError(
                f"{self.task} task requires {expected} classes, got {len(self.class_names)}"
            )
        for img in self.images:
            if img.class_label >= len(self.class_names):
                raise ValueError(f"label {img.class_label} out of range for {img.id}")

    @property
    def counts(self) -> dict:
        """Per-class original-image counts keyed by class name."""
        out = {name: 0 for name in self.class_names}
        for img in self.images:
            if img.origin == ORIGIN_ORIGINAL:
                out[self.class_names[img.class_label]] += 1
        return out

    @property
    def total_originals(self) -> int:
        return sum(self.counts.values())

    def originals(self) -> "DatasetManifest":
        subset = tuple(i for i in self.images if i.origin == ORIGIN_ORIGINAL)
        return DatasetManifest(self.task, self.class_names, subset)

    def by_class(self, origin: str | None = None) -> dict:
        """class label -> list of LabeledImage, optionally origin-filtered."""
        out = {c: [] for c in range(len(self.class_names))}
        for img in self.images:
            if origin is None or img.origin == origin:
                out[img.class_label].append(img)
        return out

    def subset(self, ids) -> "DatasetManifest":
        wanted = set(ids)
        return DatasetManifest(
            self.task, self.class_names, tuple(i for i in self.images if i.id in wanted)
        )

    def merge(self, other: "DatasetManifest") -> "DatasetManifest":
        if other.class_names != self.class_names or other.task != self.task:
            raise ValueError("cannot merge manifests with different class maps")
        return DatasetManifest(self.task, self.class_names, self.images + other.images)

    def to_dict(self) -> dict:
        return {
            "task": self.task,
            "class_names": list(self.class_names),
            "images": [
                {
                    "id": i.id,
                    "path": i.path,
                    "label": i.class_label,
                    "origin": i.origin,
                    "source_id": i.source_id,
                }
                for i in self.images
            ],
        }

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2))

    @classmethod
    def from_dict(cls, d: dict) -> "DatasetManifest":
        images = tuple(
            LabeledImage(e["id"], e["path"], e["label"], e["origin"], e.get("source_id"))
            for e in d["images"]
        )
        return cls(d["task"], tuple(d["class_names"]), images)

    @classmethod
    def load(cls, path) -> "DatasetManifest":
        return cls.from_dict(json.loads(Path(path).read_text()))


def _check_decodable(path: Path) -> bool:
    try:
        with Image.open(path) as im:
            im.convert("RGB")
        return True
    except (UnidentifiedImageError, OSError):
        return False


def _scan_class_folder(folder: Path, label: int, origin: str, on_undecodable: str):
    images = []
    for path in sorted(folder.rglob("*")):
        if not path.is_file() or path.suffix.lower() not in IMAGE_EXTENSIONS:
            continue
        if not _check_decodable(path):
            if on_undecodable == "fail":
                raise UndecodableImage(f"cannot decode {path}")
            log.warning("skipping undecodable image %s", path)
            continue
        images.append(
            LabeledImage(
                id=f"{origin}:{label}:{path.relative_to(folder).as_posix()}",
                path=str(path),
                class_label=label,
                origin=origin,
            )
        )
    return images


def ingest_dataset(
    root,
    task: str,
    layout: DatasetLayout | None = None,
    include_augmented: bool = True,
    on_undecodable: str = "fail",
) -> DatasetManifest:
    """Enumerate a dataset root into a manifest.

    Every class folder under the originals directory is required; the
    augmented directory is optional per class. `on_undecodable` is "fail"
    (default) or "skip".
    """
    root = Path(root)
    layout = layout or DatasetLayout.for_task(task)
    if on_undecodable not in ("fail", "skip"):
        raise ValueError("on_undecodable must be 'fail' or 'skip'")

    images = []
    original_root = root / layout.original_folder
    for label, (class_name, folder_name) in enumerate(layout.class_folders):
        class_dir = original_root / folder_name
        if not class_dir.is_dir():
            raise MissingClassDirectory(
                f"missing class folder for {class_name!r}: {class_dir}"
            )
        images.extend(_scan_class_folder(class_dir, label, ORIGIN_ORIGINAL, on_undecodable))

    if include_augmented:
        augmented_root = root / layout.augmented_folder
        for label, (class_name, folder_name) in enumerate(layout.class_folders):
            class_dir = augmented_root / folder_name
            if class_dir.is_dir():
                images.extend(
                    _scan_class_folder(class_dir, label, ORIGIN_AUGMENTED, on_undecodable)
                )

    images.sort(key=lambda i: i.path)
    class_names = tuple(name for name, _ in layout.class_folders)
    return DatasetManifest(task=task, class_names=class_names, images=tuple(images))
