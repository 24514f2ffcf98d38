"""Shared fixtures: synthetic image trees sized like the published datasets."""
from __future__ import annotations

import numpy as np
import pytest
from PIL import Image

from itmainn.data.manifest import ingest_dataset

# class order matches the library's label order
BINARY_FOLDER_COUNTS = (("Monkey Pox", 102), ("Others", 126))
MULTICLASS_FOLDER_COUNTS = (
    ("Monkeypox", 284),
    ("Chickenpox", 75),
    ("Measles", 55),
    ("Cowpox", 66),
    ("HFMD", 161),
    ("Healthy", 114),
)


def write_png(path, rng, size=(16, 16), mean=128.0):
    arr = rng.normal(mean, 40.0, (size[1], size[0], 3)).clip(0, 255).astype(np.uint8)
    path.parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(arr).save(path)


def build_tree(root, folder_counts, seed=0, size=(16, 16), original_folder="Original Images"):
    """Dataset tree with `count` PNGs per class folder; returns the root."""
    rng = np.random.default_rng(seed)
    for folder, count in folder_counts:
        for i in range(count):
            write_png(root / original_folder / folder / f"img_{i:04d}.png", rng, size)
    return root


@pytest.fixture(scope="session")
def binary_tree(tmp_path_factory):
    root = tmp_path_factory.mktemp("binary_dataset")
    return build_tree(root, BINARY_FOLDER_COUNTS, seed=11)


@pytest.fixture(scope="session")
def multiclass_tree(tmp_path_factory):
    root = tmp_path_factory.mktemp("multiclass_dataset")
    return build_tree(root, MULTICLASS_FOLDER_COUNTS, seed=12)


@pytest.fixture(scope="session")
def binary_manifest(binary_tree):
    return ingest_dataset(binary_tree, "binary")


@pytest.fixture(scope="session")
def multiclass_manifest(multiclass_tree):
    return ingest_dataset(multiclass_tree, "multiclass")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL/SKIP line per acceptance criterion after the run."""
    results = {}
    for key, word in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL"), ("skipped", "SKIP")):
        for rep in terminalreporter.stats.get(key, ()):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" in nodeid:
                results.setdefault(nodeid.split("::")[-1], word)
    if not results:
        return
    try:
        from test_acceptance import CRITERIA
    except Exception:
        CRITERIA = {}
    terminalreporter.write_sep("-", "acceptance criteria")
    ordered = [n for n in CRITERIA if n in results]
    ordered += [n for n in results if n not in CRITERIA]
    for name in ordered:
        terminalreporter.write_line(f"{results[name]}: {CRITERIA.get(name, name)}")


@pytest.fixture()
def small_binary_manifest(tmp_path):
    """16 originals, two separable classes (bright vs dark), for fast training."""
    rng = np.random.default_rng(5)
    root = tmp_path / "small"
    for folder, mean in (("Monkey Pox", 200.0), ("Others", 55.0)):
        for i in range(8):
            write_png(
                root / "Original Images" / folder / f"s_{i:02d}.png",
                rng,
                size=(32, 32),
                mean=mean,
            )
    return ingest_dataset(root, "binary")
