"""Convolutional-trunk ViT feature extractors.

A ResNet-50 trunk (through its third stage) produces a 14x14 feature grid
for 224px inputs; a 1x1 projection turns each grid cell into a token and a
standard transformer encoder with a class token mixes them. Two presets are
exposed via the registry: a ViT-Base-width encoder and a slimmer
ViT-Small-width one.
"""
from __future__ import annotations

import torch
import torch.nn as nn
from torchvision.models import resnet50

from .common import EncoderBlock, FeatureBackbone, trunc_normal_init


class ConvViT(FeatureBackbone):
    def __init__(
        self,
        embed_dim: int = 768,
        depth: int = 12,
        num_heads: int = 12,
        grid_size: int = 14,
        trunk_channels: int = 1024,
        mlp_ratio: float = 4.0,
    ):
        super().__init__()
        trunk = resnet50(weights=None)
        # keep everything up to layer3: stride 16, 1024 channels at 224px
        self.trunk = nn.Sequential(
            trunk.conv1, trunk.bn1, trunk.relu, trunk.maxpool,
            trunk.layer1, trunk.layer2, trunk.layer3,
        )
        self.proj = nn.Conv2d(trunk_channels, embed_dim, kernel_size=1)
        self.cls_token = nn.Parameter(torch.zeros(1, 1, embed_dim))
        self.pos_embed = nn.Parameter(torch.zeros(1, grid_size * grid_size + 1, embed_dim))
        self.blocks = nn.ModuleList(
            [EncoderBlock(embed_dim, num_heads, mlp_ratio) for _ in range(depth)]
        )
        self.norm = nn.LayerNorm(embed_dim)
        self.feature_dim = embed_dim
        trunc_normal_init(self.cls_token)
        trunc_normal_init(self.pos_embed)

    def forward(self, x):
        x = self.trunk(x)
        x = self.proj(x).flatten(2).transpose(1, 2)
        cls = self.cls_token.expand(x.shape[0], -1, -1)
        x = torch.cat([cls, x], dim=1) + self.pos_embed
        for block in self.blocks:
            x = block(x)
        return self.norm(x)[:, 0]

    def layer_groups(self):
        groups = [
            ("trunk", ("trunk.",)),
            ("embed", ("proj.", "cls_token", "pos_embed")),
        ]
        groups += [(f"block{i}", (f"blocks.{i}.",)) for i in range(len(self.blocks))]
        groups.append(("norm", ("norm.",)))
        return groups


def load_resnet50_trunk(model: ConvViT, resnet_state: dict) -> None:
    """Seed just the convolutional trunk from a stock ResNet-50 checkpoint.

    Used when no full checkpoint exists for the hybrid; the transformer part
    keeps its fresh initialization.
    """
    # sequential trunk slots: 0=conv1 1=bn1 4=layer1 5=layer2 6=layer3
    prefix_map = {
        "conv1.": "0.",
        "bn1.": "1.",
        "layer1.": "4.",
        "layer2.": "5.",
        "layer3.": "6.",
    }
    mapped = {}
    for key, value in resnet_state.items():
        for src, dst in prefix_map.items():
            if key.startswith(src):
                mapped[dst + key[len(src):]] = value
                break
    missing, _unused = model.trunk.load_state_dict(mapped, strict=False)
    if missing:
        raise RuntimeError(f"trunk load left {len(missing)} keys uninitialized")


def vit_hybrid_base() -> ConvViT:
    """R50 trunk with a ViT-Base-width encoder."""
    return ConvViT(embed_dim=768, depth=12, num_heads=12)


def resnet_vit_small() -> ConvViT:
    """R50 trunk with a slimmer ViT-Small-width encoder."""
    return ConvViT(embed_dim=384, depth=8, num_heads=6)
