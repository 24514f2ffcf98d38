"""Two-level (pixel-in-patch) vision transformer feature extractor.

Each image patch carries its own sequence of sub-patch ("pixel") tokens
processed by an inner transformer; flattened inner states are projected and
added to the patch embedding before the outer transformer mixes patches
globally. The class token of the outer stream is the extracted feature.
"""
from __future__ import annotations

import torch
import torch.nn as nn

from .common import EncoderBlock, FeatureBackbone, append_cls_token, check_divisible, trunc_normal_init


class TntBlock(nn.Module):
    def __init__(self, outer_dim, inner_dim, n_pixels, outer_heads, inner_heads, mlp_ratio):
        super().__init__()
        self.inner = EncoderBlock(inner_dim, inner_heads, mlp_ratio)
        self.proj_norm = nn.LayerNorm(inner_dim * n_pixels)
        self.proj = nn.Linear(inner_dim * n_pixels, outer_dim)
        self.outer = EncoderBlock(outer_dim, outer_heads, mlp_ratio)

    def forward(self, patch_tokens, pixel_tokens):
        pixel_tokens = self.inner(pixel_tokens)
        b_n, n_pix, d_in = pixel_tokens.shape
        n_patches = patch_tokens.shape[1] - 1  # minus class token
        fused = self.proj(self.proj_norm(pixel_tokens.reshape(b_n, n_pix * d_in)))
        fused = fused.reshape(-1, n_patches, patch_tokens.shape[2])
        patch_tokens = torch.cat(
            [patch_tokens[:, :1], patch_tokens[:, 1:] + fused], dim=1
        )
        patch_tokens = self.outer(patch_tokens)
        return patch_tokens, pixel_tokens


class TNT(FeatureBackbone):
    def __init__(
        self,
        img_size: int = 224,
        patch_size: int = 16,
        pixel_size: int = 4,
        outer_dim: int = 384,
        inner_dim: int = 24,
        depth: int = 12,
        outer_heads: int = 6,
        inner_heads: int = 4,
        mlp_ratio: float = 4.0,
    ):
        super().__init__()
        check_divisible(img_size, patch_size, "image size vs patch size")
        check_divisible(patch_size, pixel_size, "patch size vs pixel size")
        self.patch_size = patch_size
        self.n_patches = (img_size // patch_size) ** 2
        self.pixels_per_side = patch_size // pixel_size
        self.n_pixels = self.pixels_per_side**2
        self.feature_dim = outer_dim

        self.pixel_embed = nn.Conv2d(3, inner_dim, kernel_size=pixel_size, stride=pixel_size)
        self.pixel_pos = nn.Parameter(torch.zeros(1, self.n_pixels, inner_dim))
        self.patch_proj = nn.Linear(inner_dim * self.n_pixels, outer_dim)
        self.cls_token = nn.Parameter(torch.zeros(1, 1, outer_dim))
        self.patch_pos = nn.Parameter(torch.zeros(1, self.n_patches + 1, outer_dim))
        self.blocks = nn.ModuleList(
            TntBlock(outer_dim, inner_dim, self.n_pixels, outer_heads, inner_heads, mlp_ratio)
            for _ in range(depth)
        )
        self.norm = nn.LayerNorm(outer_dim)
        trunc_normal_init(self)
        nn.init.trunc_normal_(self.pixel_pos, std=0.02)
        nn.init.trunc_normal_(self.patch_pos, std=0.02)

    def _embed(self, x):
        b = x.shape[0]
        grid = x.shape[2] // self.patch_size
        pix = self.pixel_embed(x)  # (B, inner, H/ps, W/ps)
        d_in = pix.shape[1]
        # regroup pixel tokens under their parent patch
        pix = pix.reshape(b, d_in, grid, self.pixels_per_side, grid, self.pixels_per_side)
        pix = pix.permute(0, 2, 4, 3, 5, 1).reshape(b * grid * grid, self.n_pixels, d_in)
        pix = pix + self.pixel_pos
        patches = self.patch_proj(pix.reshape(b * grid * grid, -1)).reshape(b, grid * grid, -1)
        patches = append_cls_token(patches, self.cls_token) + self.patch_pos
        return patches, pix

    def forward(self, x):
        patches, pixels = self._embed(x)
        for block in self.blocks:
            patches, pixels = block(patches, pixels)
        return self.norm(patches)[:, 0]

    def layer_groups(self):
        groups = [
            ("embed", ("pixel_embed.", "pixel_pos", "patch_proj.", "cls_token", "patch_pos"))
        ]
        groups += [(f"block{i}", (f"blocks.{i}.",)) for i in range(len(self.blocks))]
        groups.append(("norm", ("norm.",)))
        return groups
