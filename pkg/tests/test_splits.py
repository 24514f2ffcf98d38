"""Split and fold construction: stratification, determinism, quarantine."""
import math
import random

import pytest

from itmainn.data.manifest import DatasetManifest, LabeledImage
from itmainn.data.splits import (
    ClassSmallerThanK,
    EmptyClass,
    FoldPlan,
    FractionOutOfRange,
    KTooSmall,
    SplitPlan,
    make_folds,
    stratified_split,
    training_pool,
)


def fake_manifest(counts, task=None, with_augmented=0):
    """In-memory manifest; paths never touched by split code."""
    n_classes = len(counts)
    task = task or {2: "binary", 6: "multiclass"}[n_classes]
    names = ("Other", "Monkeypox") if n_classes == 2 else (
        "Monkeypox", "Chickenpox", "Measles", "Cowpox", "HFMD", "Healthy")
    images = []
    for label, n in enumerate(counts):
        for i in range(n):
            iid = f"original:{names[label]}:img{i:03d}"
            images.append(LabeledImage(iid, f"{names[label]}/img{i:03d}.png", label, "original"))
            for j in range(with_augmented):
                images.append(
                    LabeledImage(
                        f"augmented:{names[label]}:img{i:03d}_a{j}",
                        f"aug/{names[label]}/img{i:03d}_a{j}.png",
                        label,
                        "augmented",
                        source_id=iid,
                    )
                )
    return DatasetManifest(task, names, tuple(images))


def half_up(x):
    return math.floor(x + 0.5)


def per_class_count(manifest, ids):
    by_label = {}
    lookup = {img.id: img.class_label for img in manifest.images}
    for i in ids:
        by_label[lookup[i]] = by_label.get(lookup[i], 0) + 1
    return by_label


def test_binary_80_20_allocations_are_exact(binary_manifest):
    plan = stratified_split(binary_manifest, 0.2, seed=13)
    test_counts = per_class_count(binary_manifest, plan.test_ids)
    # Other: half_up(0.2*126)=25, Monkeypox: half_up(0.2*102)=20
    assert test_counts == {0: 25, 1: 20}
    assert len(plan.train_ids) == 228 - 45
    assert len(plan.val_ids) == 0


def test_val_carved_from_remainder(binary_manifest):
    plan = stratified_split(binary_manifest, 0.2, 0.1, seed=13)
    val_counts = per_class_count(binary_manifest, plan.val_ids)
    # remainders 101 and 82 -> half_up(10.1)=10, half_up(8.2)=8
    assert val_counts == {0: 10, 1: 8}
    assert len(plan.train_ids) + len(plan.val_ids) + len(plan.test_ids) == 228


def test_partition_properties_random_manifests():
    rng = random.Random(21)
    for _ in range(40):
        n_classes = rng.choice((2, 6))
        counts = [rng.randint(3, 60) for _ in range(n_classes)]
        manifest = fake_manifest(counts)
        frac = rng.choice((0.1, 0.2, 0.25, 0.3))
        vfrac = rng.choice((0.0, 0.1, 0.2))
        plan = stratified_split(manifest, frac, vfrac, seed=rng.randint(0, 10**6))

        every = set(plan.train_ids) | set(plan.val_ids) | set(plan.test_ids)
        assert len(every) == sum(counts)  # union covers, no duplicates
        assert not (set(plan.train_ids) & set(plan.test_ids))
        assert not (set(plan.train_ids) & set(plan.val_ids))
        assert not (set(plan.val_ids) & set(plan.test_ids))

        test_counts = per_class_count(manifest, plan.test_ids)
        for label, n in enumerate(counts):
            got = test_counts.get(label, 0)
            assert got == half_up(frac * n)
            assert abs(got - frac * n) <= 1  # stratification bound


def test_split_determinism_and_seed_sensitivity(binary_manifest):
    a = stratified_split(binary_manifest, 0.2, 0.1, seed=99)
    b = stratified_split(binary_manifest, 0.2, 0.1, seed=99)
    c = stratified_split(binary_manifest, 0.2, 0.1, seed=100)
    assert a == b
    assert set(a.test_ids) != set(c.test_ids)


def test_plan_json_round_trip(binary_manifest):
    plan = stratified_split(binary_manifest, 0.2, 0.1, seed=4)
    assert SplitPlan.from_dict(plan.to_dict()) == plan


def test_rounding_modes():
    manifest = fake_manifest([10, 10])
    n_ceil = per_class_count(manifest, stratified_split(manifest, 0.25, rounding="ceil").test_ids)
    n_floor = per_class_count(manifest, stratified_split(manifest, 0.25, rounding="floor").test_ids)
    assert n_ceil == {0: 3, 1: 3}
    assert n_floor == {0: 2, 1: 2}
    with pytest.raises(ValueError):
        stratified_split(manifest, 0.25, rounding="banker")


def test_fraction_and_empty_class_validation():
    manifest = fake_manifest([4, 4])
    with pytest.raises(FractionOutOfRange):
        stratified_split(manifest, 1.0)
    with pytest.raises(FractionOutOfRange):
        stratified_split(manifest, -0.1)
    empty = DatasetManifest(
        "binary", ("Other", "Monkeypox"),
        tuple(LabeledImage(f"original:Other:{i}", f"o{i}.png", 0, "original") for i in range(4)),
    )
    with pytest.raises(EmptyClass):
        stratified_split(empty, 0.25)


def test_augmented_never_allocated_to_any_split():
    manifest = fake_manifest([10, 10], with_augmented=2)
    plan = stratified_split(manifest, 0.2, 0.2, seed=3)
    allocated = set(plan.train_ids) | set(plan.val_ids) | set(plan.test_ids)
    origins = {img.id: img.origin for img in manifest.images}
    assert all(origins[i] == "original" for i in allocated)
    assert len(allocated) == 20  # only the originals


def test_training_pool_keeps_only_train_derivatives():
    manifest = fake_manifest([10, 10], with_augmented=2)
    plan = stratified_split(manifest, 0.2, 0.2, seed=3)
    pool = training_pool(manifest, plan)
    train = set(plan.train_ids)
    held_out = set(plan.val_ids) | set(plan.test_ids)
    for img in pool.images:
        if img.origin == "original":
            assert img.id in train
        else:
            assert img.source_id in train
            assert img.source_id not in held_out
    # every train original contributes itself plus its 2 derivatives
    assert len(pool.images) == len(train) * 3


def test_fold_partition_and_balance():
    rng = random.Random(31)
    for _ in range(20):
        counts = [rng.randint(7, 40) for _ in range(rng.choice((2, 6)))]
        manifest = fake_manifest(counts)
        k = rng.choice((3, 5))
        plan = make_folds(manifest, k, seed=rng.randint(0, 10**6))
        all_ids = [i for fold in plan.folds for i in fold]
        assert len(all_ids) == len(set(all_ids)) == sum(counts)
        sizes = [len(f) for f in plan.folds]
        assert max(sizes) - min(sizes) <= 1
        for label in range(len(counts)):
            per_fold = [per_class_count(manifest, f).get(label, 0) for f in plan.folds]
            assert max(per_fold) - min(per_fold) <= 1


def test_fold_determinism_and_errors(binary_manifest):
    assert make_folds(binary_manifest, 5, seed=8) == make_folds(binary_manifest, 5, seed=8)
    with pytest.raises(KTooSmall):
        make_folds(binary_manifest, 1)
    with pytest.raises(ClassSmallerThanK):
        make_folds(fake_manifest([3, 12]), 5)


def test_split_for_fold():
    manifest = fake_manifest([10, 10])
    plan = make_folds(manifest, 5, seed=2)
    train, test = plan.split_for_fold(2)
    assert set(test) == set(plan.folds[2])
    assert set(train) | set(test) == {i.id for i in manifest.images}
    assert not set(train) & set(test)
    assert FoldPlan.from_dict(plan.to_dict()) == plan
