"""Service configuration: JSON file plus environment-variable overrides."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from .store import SYMPTOM_CATALOG

DEFAULT_GUIDANCE = {
    "infected": (
        "The image shows features consistent with Monkeypox. Isolate, avoid "
        "skin contact with others, and contact a health center for testing."
    ),
    "uninfected": (
        "No Monkeypox features detected. Monitor the lesion and seek care if "
        "symptoms worsen or new lesions appear."
    ),
}

ENV_BUNDLE = "ITMAINN_BUNDLE_PATH"
ENV_STORE = "ITMAINN_STORE_PATH"
ENV_TOKEN = "ITMAINN_API_TOKEN"
ENV_PORT = "ITMAINN_PORT"


@dataclass(frozen=True)
class ServiceConfig:
    bundle_path: Optional[Path] = None
    store_path: Path = Path("cases.sqlite3")
    centers_csv: Optional[Path] = None
    api_token: Optional[str] = None
    host: str = "127.0.0.1"
    port: int = 8000
    max_image_bytes: int = 10 * 1024 * 1024
    threshold: float = 0.5
    positive_class: str = "Monkeypox"
    symptom_catalog: tuple = SYMPTOM_CATALOG
    frontend_dist: Optional[Path] = None
    guidance: dict = field(default_factory=lambda: dict(DEFAULT_GUIDANCE))
    poll_interval_s: int = 30

    @classmethod
    def from_file(cls, path) -> "ServiceConfig":
        raw = json.loads(Path(path).read_text())
        kwargs = {}
        for key in (
            "api_token",
            "host",
            "port",
            "max_image_bytes",
            "threshold",
            "positive_class",
            "guidance",
            "poll_interval_s",
        ):
            if key in raw:
                kwargs[key] = raw[key]
        for key in ("bundle_path", "store_path", "centers_csv", "frontend_dist"):
            if raw.get(key):
                kwargs[key] = Path(raw[key])
        if "symptom_catalog" in raw:
            kwargs["symptom_catalog"] = tuple(raw["symptom_catalog"])
        return cls(**kwargs)

    def with_env(self, env=None) -> "ServiceConfig":
        env = os.environ if env is None else env
        updates = {}
        if env.get(ENV_BUNDLE):
            updates["bundle_path"] = Path(env[ENV_BUNDLE])
        if env.get(ENV_STORE):
            updates["store_path"] = Path(env[ENV_STORE])
        if env.get(ENV_TOKEN):
            updates["api_token"] = env[ENV_TOKEN]
        if env.get(ENV_PORT):
            updates["port"] = int(env[ENV_PORT])
        return replace(self, **updates) if updates else self
