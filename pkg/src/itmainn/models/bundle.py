"""Deployment bundle export and import.

A bundle is a directory of three files: ``manifest.json`` describing the
model, ``weights.bin`` holding the serialized parameters, and
``checksum.sha256`` pinning the weight blob. Loading verifies the checksum
before touching the weights and refuses manifests from a schema it does not
understand.
"""
from __future__ import annotations

import hashlib
import io
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

import torch

from ..augment.preprocess import PreprocessSpec
from ..evaluation.metrics import MetricReport
from .classifier import ClassifierModel, build_model
from .heads import HeadSpec
from .registry import BackboneSpec

SCHEMA_VERSION = 1

MANIFEST_NAME = "manifest.json"
WEIGHTS_NAME = "weights.bin"
CHECKSUM_NAME = "checksum.sha256"


class BundleError(Exception):
    pass


class UntrainedModel(BundleError):
    pass


class WriteFailure(BundleError):
    pass


class ChecksumMismatch(BundleError):
    pass


class SchemaVersionUnsupported(BundleError):
    pass


class IncompleteBundle(BundleError):
    pass


@dataclass(frozen=True)
class DeploymentBundle:
    path: Path
    manifest: dict
    checksum: str


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def export_bundle(
    model: ClassifierModel,
    metrics: Optional[MetricReport],
    out: Path,
) -> DeploymentBundle:
    """Write manifest + weights + checksum for a trained model."""
    if model.epochs_trained < 1:
        raise UntrainedModel("refusing to export a model with no completed training epochs")
    out = Path(out)
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "backbone": model.spec.name,
        "weight_source_id": model.spec.weight_source_id,
        "input_size": model.spec.input_size,
        "feature_dim": model.spec.feature_dim,
        "freeze_boundary": model.spec.freeze_boundary,
        "task": model.head_spec.task,
        "class_names": list(model.class_names),
        "preprocess": model.spec.preprocess.to_dict(),
        "head": model.head_spec.to_dict(),
        "metrics": metrics.to_dict() if metrics is not None else None,
        "epochs_trained": model.epochs_trained,
        "created_at": datetime.now(timezone.utc).isoformat(),
    }
    buffer = io.BytesIO()
    torch.save(model.state_dict(), buffer)
    blob = buffer.getvalue()
    digest = _sha256(blob)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / WEIGHTS_NAME).write_bytes(blob)
        (out / MANIFEST_NAME).write_text(json.dumps(manifest, indent=2))
        (out / CHECKSUM_NAME).write_text(f"{digest}  {WEIGHTS_NAME}\n")
    except OSError as exc:
        raise WriteFailure(f"could not write bundle at {out}: {exc}") from exc
    return DeploymentBundle(path=out, manifest=manifest, checksum=digest)


def read_manifest(path: Path) -> dict:
    path = Path(path)
    manifest_path = path / MANIFEST_NAME
    if not manifest_path.exists():
        raise IncompleteBundle(f"missing {MANIFEST_NAME} in {path}")
    manifest = json.loads(manifest_path.read_text())
    version = manifest.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionUnsupported(
            f"bundle schema_version={version!r}; this build understands {SCHEMA_VERSION}"
        )
    return manifest


def load_bundle(path: Path) -> ClassifierModel:
    """Reconstruct the model; checksum is verified before weights load."""
    path = Path(path)
    manifest = read_manifest(path)
    for name in (WEIGHTS_NAME, CHECKSUM_NAME):
        if not (path / name).exists():
            raise IncompleteBundle(f"missing {name} in {path}")
    blob = (path / WEIGHTS_NAME).read_bytes()
    recorded = (path / CHECKSUM_NAME).read_text().split()[0]
    actual = _sha256(blob)
    if actual != recorded:
        raise ChecksumMismatch(f"weights checksum {actual[:12]}... != recorded {recorded[:12]}...")

    spec = BackboneSpec(
        name=manifest["backbone"],
        weight_source_id=manifest["weight_source_id"],
        input_size=manifest["input_size"],
        feature_dim=manifest["feature_dim"],
        freeze_boundary=manifest["freeze_boundary"],
        preprocess=PreprocessSpec.from_dict(manifest["preprocess"]),
    )
    head_spec = HeadSpec.from_dict(manifest["head"])
    model = build_model(
        spec,
        head_spec,
        pretrained=False,
        class_names=manifest["class_names"],
    )
    state = torch.load(io.BytesIO(blob), map_location="cpu")
    model.load_state_dict(state)
    model.epochs_trained = manifest.get("epochs_trained", 1)
    model.eval()
    return model
