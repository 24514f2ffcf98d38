"""Classification heads appended to a frozen (or partly frozen) backbone."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

import torch.nn as nn

BINARY = "binary"
MULTICLASS = "multiclass"
MULTICLASS_OUTPUTS = 6


class InvalidHeadSpec(ValueError):
    pass


@dataclass(frozen=True)
class HeadSpec:
    """Shape and activation contract for the classifier head.

    Binary heads emit a single sigmoid score; multiclass heads emit one
    softmax score per class.
    """

    task: str
    hidden_dims: tuple = (256,)
    dropout_rate: float = 0.2
    output_dim: int = 0
    output_activation: str = ""

    def __post_init__(self):
        if self.task not in (BINARY, MULTICLASS):
            raise InvalidHeadSpec(f"task must be binary or multiclass, got {self.task!r}")
        expected_dim = 1 if self.task == BINARY else MULTICLASS_OUTPUTS
        expected_act = "sigmoid" if self.task == BINARY else "softmax"
        # allow shorthand construction that leaves the output contract implied
        if self.output_dim == 0:
            object.__setattr__(self, "output_dim", expected_dim)
        if not self.output_activation:
            object.__setattr__(self, "output_activation", expected_act)
        if self.output_dim != expected_dim:
            raise InvalidHeadSpec(
                f"{self.task} head requires output_dim={expected_dim}, got {self.output_dim}"
            )
        if self.output_activation != expected_act:
            raise InvalidHeadSpec(
                f"{self.task} head requires {expected_act} activation, got {self.output_activation!r}"
            )
        if not 0 <= self.dropout_rate < 1:
            raise InvalidHeadSpec(f"dropout_rate must be in [0, 1), got {self.dropout_rate}")
        object.__setattr__(self, "hidden_dims", tuple(int(d) for d in self.hidden_dims))
        if any(d <= 0 for d in self.hidden_dims):
            raise InvalidHeadSpec("hidden_dims must all be positive")

    def to_dict(self) -> dict:
        return {
            "task": self.task,
            "hidden_dims": list(self.hidden_dims),
            "dropout_rate": self.dropout_rate,
            "output_dim": self.output_dim,
            "output_activation": self.output_activation,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "HeadSpec":
        return cls(
            task=raw["task"],
            hidden_dims=tuple(raw.get("hidden_dims", (256,))),
            dropout_rate=raw.get("dropout_rate", 0.2),
            output_dim=raw.get("output_dim", 0),
            output_activation=raw.get("output_activation", ""),
        )


def build_head(spec: HeadSpec, feature_dim: int) -> nn.Sequential:
    """Linear stack: hidden layers with ReLU + dropout, then the output layer.

    Emits logits; the owning model applies the spec's activation.
    """
    layers: List[nn.Module] = []
    width = feature_dim
    for hidden in spec.hidden_dims:
        layers.append(nn.Linear(width, hidden))
        layers.append(nn.ReLU())
        layers.append(nn.Dropout(spec.dropout_rate))
        width = hidden
    layers.append(nn.Linear(width, spec.output_dim))
    return nn.Sequential(*layers)
