"""Deterministic seed derivation so one top-level seed drives every stage."""
from __future__ import annotations

import zlib

_MASK = 0x7FFFFFFF


def derive_seed(base: int, label: str) -> int:
    """Stable per-stage/per-item child seed from a base seed and a label."""
    return (int(base) ^ zlib.crc32(label.encode("utf-8"))) & _MASK
