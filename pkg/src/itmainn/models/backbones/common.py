"""Shared building blocks for the transformer backbones."""
from __future__ import annotations

import torch
import torch.nn as nn


class Mlp(nn.Module):
    def __init__(self, dim: int, hidden: int, act=nn.GELU):
        super().__init__()
        self.fc1 = nn.Linear(dim, hidden)
        self.act = act()
        self.fc2 = nn.Linear(hidden, dim)

    def forward(self, x):
        return self.fc2(self.act(self.fc1(x)))


class EncoderBlock(nn.Module):
    """Pre-norm transformer encoder block (self-attention + MLP)."""

    def __init__(self, dim: int, heads: int, mlp_ratio: float = 4.0):
        super().__init__()
        self.norm1 = nn.LayerNorm(dim)
        self.attn = nn.MultiheadAttention(dim, heads, batch_first=True)
        self.norm2 = nn.LayerNorm(dim)
        self.mlp = Mlp(dim, int(dim * mlp_ratio))

    def forward(self, x):
        y = self.norm1(x)
        x = x + self.attn(y, y, y, need_weights=False)[0]
        x = x + self.mlp(self.norm2(x))
        return x


class FeatureBackbone(nn.Module):
    """Base class for feature extractors consumed by the classifier builder.

    Subclasses expose `feature_dim` and an ordered `layer_groups()` list of
    (group_name, parameter-name prefixes) used to resolve freeze boundaries;
    forward maps a (B, 3, H, W) batch to (B, feature_dim).
    """

    feature_dim: int

    def layer_groups(self) -> list:
        raise NotImplementedError

    def group_names(self) -> list:
        return [name for name, _ in self.layer_groups()]

    def group_of_parameter(self, param_name: str) -> str:
        group = group_of_parameter(self.layer_groups(), param_name)
        if group is None:
            raise KeyError(f"parameter {param_name!r} not covered by any layer group")
        return group


def group_of_parameter(groups, param_name: str):
    """Resolve a parameter name against (group, prefixes) pairs; None if absent."""
    for group, prefixes in groups:
        if any(param_name.startswith(p) for p in prefixes):
            return group
    return None


def trunc_normal_init(module) -> None:
    """Standard transformer weight init for linear/embedding layers.

    Also accepts a bare Parameter (class token, positional embedding).
    """
    if isinstance(module, nn.Parameter):
        nn.init.trunc_normal_(module, std=0.02)
        return
    for m in module.modules():
        if isinstance(m, nn.Linear):
            nn.init.trunc_normal_(m.weight, std=0.02)
            if m.bias is not None:
                nn.init.zeros_(m.bias)
        elif isinstance(m, nn.LayerNorm):
            nn.init.ones_(m.weight)
            nn.init.zeros_(m.bias)


def check_divisible(value: int, divisor: int, what: str) -> None:
    if value % divisor != 0:
        raise ValueError(f"{what}: {value} is not divisible by {divisor}")


def append_cls_token(tokens: torch.Tensor, cls: nn.Parameter) -> torch.Tensor:
    return torch.cat([cls.expand(tokens.shape[0], -1, -1), tokens], dim=1)
