"""Feature-extractor wrappers around stock torchvision architectures.

Each wrapper drops the original classification head, exposes the pooled
feature vector, and names its layer groups so the freeze logic can draw a
boundary anywhere in the depth of the network.
"""
from __future__ import annotations

import torch.nn as nn
from torchvision import models as tv_models

from .common import FeatureBackbone


class VitB16(FeatureBackbone):
    """ViT-B/16; feature is the class token after the final encoder norm."""

    def __init__(self):
        super().__init__()
        self.net = tv_models.vit_b_16(weights=None)
        self.net.heads = nn.Identity()
        self.feature_dim = 768

    def forward(self, x):
        return self.net(x)

    def layer_groups(self):
        groups = [("embed", ("net.conv_proj.", "net.class_token", "net.encoder.pos_embedding"))]
        groups += [
            (f"block{i}", (f"net.encoder.layers.encoder_layer_{i}.",)) for i in range(12)
        ]
        groups.append(("norm", ("net.encoder.ln.",)))
        return groups


class SwinT(FeatureBackbone):
    """Swin-Tiny; blocks are numbered straight through the four stages."""

    def __init__(self):
        super().__init__()
        self.net = tv_models.swin_t(weights=None)
        self.net.head = nn.Identity()
        self.feature_dim = 768

    def forward(self, x):
        return self.net(x)

    def layer_groups(self):
        # torchvision lays swin_t out as features.[0]=embed, odd indices are
        # block stages (depths 2,2,6,2), even indices past 0 are merges
        groups = [("embed", ("net.features.0.",))]
        block = 0
        for stage_idx, depth in ((1, 2), (3, 2), (5, 6), (7, 2)):
            if stage_idx > 1:
                groups.append((f"merge{stage_idx // 2}", (f"net.features.{stage_idx - 1}.",)))
            for j in range(depth):
                groups.append((f"block{block}", (f"net.features.{stage_idx}.{j}.",)))
                block += 1
        groups.append(("norm", ("net.norm.",)))
        return groups


class Vgg16(FeatureBackbone):
    """VGG-16 up through its second fully connected layer (4096-d)."""

    def __init__(self):
        super().__init__()
        self.net = tv_models.vgg16(weights=None)
        self.net.classifier[6] = nn.Identity()
        self.feature_dim = 4096

    def forward(self, x):
        return self.net(x)

    def layer_groups(self):
        # conv indices per VGG-16 stage within net.features
        stages = (
            ("stage1", (0, 2)),
            ("stage2", (5, 7)),
            ("stage3", (10, 12, 14)),
            ("stage4", (17, 19, 21)),
            ("stage5", (24, 26, 28)),
        )
        groups = [
            (name, tuple(f"net.features.{i}." for i in idxs)) for name, idxs in stages
        ]
        groups.append(("fc", ("net.classifier.",)))
        return groups


class ResNet50(FeatureBackbone):
    def __init__(self):
        super().__init__()
        self.net = tv_models.resnet50(weights=None)
        self.net.fc = nn.Identity()
        self.feature_dim = 2048

    def forward(self, x):
        return self.net(x)

    def layer_groups(self):
        return [
            ("stem", ("net.conv1.", "net.bn1.")),
            ("stage1", ("net.layer1.",)),
            ("stage2", ("net.layer2.",)),
            ("stage3", ("net.layer3.",)),
            ("stage4", ("net.layer4.",)),
        ]


class EfficientNetB0(FeatureBackbone):
    def __init__(self):
        super().__init__()
        self.net = tv_models.efficientnet_b0(weights=None)
        self.net.classifier = nn.Identity()
        self.feature_dim = 1280

    def forward(self, x):
        return self.net(x)

    def layer_groups(self):
        groups = [("stem", ("net.features.0.",))]
        groups += [(f"stage{i}", (f"net.features.{i}.",)) for i in range(1, 8)]
        groups.append(("final_conv", ("net.features.8.",)))
        return groups
