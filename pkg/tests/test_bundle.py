"""Deployment bundles: export, verify, reload, tamper detection."""
import json

import pytest
import torch

from itmainn.evaluation.metrics import MetricReport
from itmainn.models.bundle import (
    ChecksumMismatch,
    IncompleteBundle,
    SchemaVersionUnsupported,
    UntrainedModel,
    export_bundle,
    load_bundle,
    read_manifest,
)
from itmainn.models.classifier import build_model
from itmainn.models.heads import HeadSpec
from itmainn.models.registry import get_spec


@pytest.fixture(scope="module")
def trained_model():
    model = build_model(get_spec("efficientnet_b0"), HeadSpec(task="binary"), pretrained=False, seed=21)
    model.epochs_trained = 3  # stands in for a real run
    model.eval()
    return model


@pytest.fixture(scope="module")
def bundle_dir(trained_model, tmp_path_factory):
    out = tmp_path_factory.mktemp("bundles") / "b1"
    metrics = MetricReport(0.9, 0.8, 0.85, 0.82, 0.95, 0.4, 0.05, "binary", 46)
    export_bundle(trained_model, metrics, out)
    return out


def test_export_refuses_untrained():
    fresh = build_model(get_spec("efficientnet_b0"), HeadSpec(task="binary"), pretrained=False)
    with pytest.raises(UntrainedModel):
        export_bundle(fresh, None, "/tmp/never-created")


def test_bundle_files_and_manifest(bundle_dir):
    assert (bundle_dir / "manifest.json").exists()
    assert (bundle_dir / "weights.bin").exists()
    assert (bundle_dir / "checksum.sha256").exists()
    manifest = read_manifest(bundle_dir)
    assert manifest["schema_version"] == 1
    assert manifest["backbone"] == "efficientnet_b0"
    assert manifest["task"] == "binary"
    assert manifest["input_size"] == 224
    assert manifest["class_names"] == ["Other", "Monkeypox"]
    assert manifest["epochs_trained"] == 3
    assert manifest["metrics"]["accuracy"] == 0.9
    digest, name = (bundle_dir / "checksum.sha256").read_text().split()
    assert name == "weights.bin" and len(digest) == 64


def test_round_trip_scores_agree(trained_model, bundle_dir):
    loaded = load_bundle(bundle_dir)
    assert loaded.epochs_trained == 3
    assert loaded.class_names == trained_model.class_names
    assert not loaded.training  # inference mode after load
    x = torch.randn(8, 3, 224, 224)
    with torch.no_grad():
        before = trained_model.scores(x)
        after = loaded.scores(x)
    assert torch.allclose(before, after, atol=1e-6)


def test_frozen_mask_survives(bundle_dir):
    loaded = load_bundle(bundle_dir)
    frozen = [n for n, p in loaded.named_parameters() if not p.requires_grad]
    assert frozen  # boundary re-applied on load


def test_tampered_weights_detected(trained_model, tmp_path):
    out = tmp_path / "b2"
    export_bundle(trained_model, None, out)
    blob = bytearray((out / "weights.bin").read_bytes())
    blob[len(blob) // 2] ^= 0xFF
    (out / "weights.bin").write_bytes(bytes(blob))
    with pytest.raises(ChecksumMismatch):
        load_bundle(out)


def test_missing_pieces_detected(trained_model, tmp_path):
    out = tmp_path / "b3"
    export_bundle(trained_model, None, out)
    (out / "manifest.json").unlink()
    with pytest.raises(IncompleteBundle):
        load_bundle(out)


def test_future_schema_rejected(trained_model, tmp_path):
    out = tmp_path / "b4"
    export_bundle(trained_model, None, out)
    manifest = json.loads((out / "manifest.json").read_text())
    manifest["schema_version"] = 99
    (out / "manifest.json").write_text(json.dumps(manifest))
    with pytest.raises(SchemaVersionUnsupported):
        load_bundle(out)


def test_multiclass_round_trip(tmp_path):
    model = build_model(
        get_spec("efficientnet_b0"), HeadSpec(task="multiclass"), pretrained=False, seed=4
    )
    model.epochs_trained = 1
    model.eval()
    out = tmp_path / "b5"
    export_bundle(model, None, out)
    loaded = load_bundle(out)
    x = torch.randn(2, 3, 224, 224)
    with torch.no_grad():
        assert torch.allclose(model.scores(x), loaded.scores(x), atol=1e-6)
    assert loaded.head_spec.task == "multiclass"
