"""Pretrained-weight providers.

Weights are resolved through an abstract provider so offline machines can run
entirely from a local cache directory. Each backbone names a weight source id
(for example ``torchvision/resnet50`` or ``local/tnt_s``); providers either
serve that id or defer to the next provider in the chain.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import torch


class WeightFetchFailure(RuntimeError):
    """No provider could supply the requested pretrained weights."""


@dataclass(frozen=True)
class WeightMetadata:
    source_id: str
    normalization_mean: Optional[tuple] = None
    normalization_std: Optional[tuple] = None


class WeightProvider:
    """Interface: metadata lookup plus state-dict fetch."""

    def metadata(self, source_id: str) -> Optional[WeightMetadata]:
        raise NotImplementedError

    def fetch(self, source_id: str) -> dict:
        raise NotImplementedError


def _cache_file(cache_dir: Path, source_id: str) -> Path:
    return cache_dir / (source_id.replace("/", "__") + ".pt")


class LocalCacheProvider(WeightProvider):
    """Serves state dicts from ``<cache_dir>/<source_id>.pt`` files.

    An optional ``.json`` sidecar next to the weights may carry normalization
    statistics recorded when the cache entry was created.
    """

    def __init__(self, cache_dir):
        self.cache_dir = Path(cache_dir)

    def metadata(self, source_id):
        sidecar = _cache_file(self.cache_dir, source_id).with_suffix(".json")
        if not sidecar.exists():
            return None
        raw = json.loads(sidecar.read_text())
        mean = raw.get("normalization_mean")
        std = raw.get("normalization_std")
        return WeightMetadata(
            source_id=source_id,
            normalization_mean=tuple(mean) if mean else None,
            normalization_std=tuple(std) if std else None,
        )

    def fetch(self, source_id):
        path = _cache_file(self.cache_dir, source_id)
        if not path.exists():
            raise WeightFetchFailure(f"no cached weights for {source_id!r} at {path}")
        try:
            return torch.load(path, map_location="cpu")
        except Exception as exc:
            raise WeightFetchFailure(f"cached weights for {source_id!r} unreadable: {exc}") from exc

    def store(self, source_id: str, state_dict: dict, metadata: Optional[WeightMetadata] = None):
        """Populate the cache (used by tooling, not by normal builds)."""
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        path = _cache_file(self.cache_dir, source_id)
        torch.save(state_dict, path)
        if metadata is not None:
            path.with_suffix(".json").write_text(
                json.dumps(
                    {
                        "normalization_mean": metadata.normalization_mean,
                        "normalization_std": metadata.normalization_std,
                    }
                )
            )


class TorchvisionProvider(WeightProvider):
    """Resolves ``torchvision/<model>`` ids through torchvision's weight enums.

    Metadata (normalization statistics) is available offline from the enum;
    the actual fetch may hit the network and fails cleanly when it cannot.
    """

    def _weights_enum(self, source_id: str):
        from torchvision import models as tv_models

        prefix, _, model_name = source_id.partition("/")
        if prefix != "torchvision" or not model_name:
            return None
        try:
            return tv_models.get_model_weights(model_name).DEFAULT
        except ValueError:
            return None

    def metadata(self, source_id):
        weights = self._weights_enum(source_id)
        if weights is None:
            return None
        transforms = weights.transforms()
        mean = getattr(transforms, "mean", None)
        std = getattr(transforms, "std", None)
        return WeightMetadata(
            source_id=source_id,
            normalization_mean=tuple(mean) if mean is not None else None,
            normalization_std=tuple(std) if std is not None else None,
        )

    def fetch(self, source_id):
        weights = self._weights_enum(source_id)
        if weights is None:
            raise WeightFetchFailure(f"{source_id!r} is not a torchvision weight id")
        try:
            return weights.get_state_dict(progress=False, check_hash=True)
        except Exception as exc:
            raise WeightFetchFailure(f"could not download weights for {source_id!r}: {exc}") from exc


class ChainProvider(WeightProvider):
    """First provider that answers wins; fetch failures fall through."""

    def __init__(self, *providers: WeightProvider):
        self.providers = providers

    def metadata(self, source_id):
        for provider in self.providers:
            found = provider.metadata(source_id)
            if found is not None:
                return found
        return None

    def fetch(self, source_id):
        failures = []
        for provider in self.providers:
            try:
                return provider.fetch(source_id)
            except WeightFetchFailure as exc:
                failures.append(str(exc))
        raise WeightFetchFailure("; ".join(failures) or f"no provider for {source_id!r}")


def default_cache_dir() -> Path:
    override = os.environ.get("ITMAINN_WEIGHTS_DIR")
    if override:
        return Path(override)
    return Path.home() / ".cache" / "itmainn" / "weights"


def default_provider(cache_dir=None) -> WeightProvider:
    return ChainProvider(
        LocalCacheProvider(cache_dir or default_cache_dir()),
        TorchvisionProvider(),
    )
