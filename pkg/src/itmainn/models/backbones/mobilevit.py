"""Mobile-friendly CNN/transformer hybrid feature extractor.

Inverted-residual (MV2) stages handle local features; in the later stages a
transformer runs over unfolded 2x2 patch positions for global mixing, and
the result is fused back with the convolutional stream.
"""
from __future__ import annotations

import torch
import torch.nn as nn

from .common import EncoderBlock, FeatureBackbone, check_divisible


def conv_bn_act(c_in, c_out, kernel=3, stride=1, groups=1):
    return nn.Sequential(
        nn.Conv2d(c_in, c_out, kernel, stride, kernel // 2, groups=groups, bias=False),
        nn.BatchNorm2d(c_out),
        nn.SiLU(),
    )


class MV2Block(nn.Module):
    """MobileNetV2-style inverted residual block."""

    def __init__(self, c_in, c_out, stride=1, expansion=4):
        super().__init__()
        hidden = c_in * expansion
        self.use_residual = stride == 1 and c_in == c_out
        self.block = nn.Sequential(
            conv_bn_act(c_in, hidden, kernel=1),
            conv_bn_act(hidden, hidden, kernel=3, stride=stride, groups=hidden),
            nn.Conv2d(hidden, c_out, 1, bias=False),
            nn.BatchNorm2d(c_out),
        )

    def forward(self, x):
        out = self.block(x)
        return x + out if self.use_residual else out


class MobileVitBlock(nn.Module):
    """Local conv, transformer over unfolded patches, then fusion."""

    def __init__(self, channels, transformer_dim, depth, heads=4, patch=2, mlp_ratio=2.0):
        super().__init__()
        self.patch = patch
        self.local = nn.Sequential(
            conv_bn_act(channels, channels, kernel=3),
            nn.Conv2d(channels, transformer_dim, 1, bias=False),
        )
        self.transformer = nn.Sequential(
            *[EncoderBlock(transformer_dim, heads, mlp_ratio) for _ in range(depth)]
        )
        self.norm = nn.LayerNorm(transformer_dim)
        self.project = conv_bn_act(transformer_dim, channels, kernel=1)
        self.fusion = conv_bn_act(channels * 2, channels, kernel=3)

    def forward(self, x):
        b, c, h, w = x.shape
        p = self.patch
        check_divisible(h, p, "feature-map height vs patch")
        check_divisible(w, p, "feature-map width vs patch")
        y = self.local(x)
        d = y.shape[1]
        # unfold: one sequence per intra-patch position, tokens are patches
        y = y.reshape(b, d, h // p, p, w // p, p)
        y = y.permute(0, 3, 5, 2, 4, 1).reshape(b * p * p, (h // p) * (w // p), d)
        y = self.norm(self.transformer(y))
        y = y.reshape(b, p, p, h // p, w // p, d)
        y = y.permute(0, 5, 3, 1, 4, 2).reshape(b, d, h, w)
        y = self.project(y)
        return self.fusion(torch.cat([x, y], dim=1))


class MobileViT(FeatureBackbone):
    def __init__(
        self,
        channels=(16, 32, 64, 96, 128, 160),
        transformer_dims=(144, 192, 240),
        depths=(2, 4, 3),
        final_dim: int = 640,
        expansion: int = 4,
    ):
        super().__init__()
        c = channels
        self.stem = conv_bn_act(3, c[0], stride=2)
        self.stage1 = MV2Block(c[0], c[1], stride=1, expansion=expansion)
        self.stage2 = nn.Sequential(
            MV2Block(c[1], c[2], stride=2, expansion=expansion),
            MV2Block(c[2], c[2], stride=1, expansion=expansion),
        )
        self.stage3 = nn.Sequential(
            MV2Block(c[2], c[3], stride=2, expansion=expansion),
            MobileVitBlock(c[3], transformer_dims[0], depths[0]),
        )
        self.stage4 = nn.Sequential(
            MV2Block(c[3], c[4], stride=2, expansion=expansion),
            MobileVitBlock(c[4], transformer_dims[1], depths[1]),
        )
        self.stage5 = nn.Sequential(
            MV2Block(c[4], c[5], stride=2, expansion=expansion),
            MobileVitBlock(c[5], transformer_dims[2], depths[2]),
        )
        self.final_conv = conv_bn_act(c[5], final_dim, kernel=1)
        self.pool = nn.AdaptiveAvgPool2d(1)
        self.feature_dim = final_dim

    def forward(self, x):
        x = self.stem(x)
        x = self.stage1(x)
        x = self.stage2(x)
        x = self.stage3(x)
        x = self.stage4(x)
        x = self.stage5(x)
        x = self.final_conv(x)
        return self.pool(x).flatten(1)

    def layer_groups(self):
        return [
            ("stem", ("stem.",)),
            ("stage1", ("stage1.",)),
            ("stage2", ("stage2.",)),
            ("stage3", ("stage3.",)),
            ("stage4", ("stage4.",)),
            ("stage5", ("stage5.",)),
            ("final_conv", ("final_conv.",)),
        ]
