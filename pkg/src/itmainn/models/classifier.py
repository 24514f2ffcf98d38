"""Classifier assembly: pretrained backbone + fresh head + freeze mask."""
from __future__ import annotations

from typing import Optional, Sequence

import torch
import torch.nn as nn

from ..data.manifest import BINARY_CLASSES, MULTICLASS_CLASSES
from ..seeds import derive_seed
from .backbones import ConvViT, group_of_parameter
from .backbones.hybrid import load_resnet50_trunk
from .heads import BINARY, HeadSpec, build_head
from .providers import WeightFetchFailure, WeightProvider, default_provider
from .registry import BackboneSpec, build_raw, _entry

_RESNET50_SOURCE = "torchvision/resnet50"


class IncompatibleHead(ValueError):
    pass


class UnknownLayerGroup(ValueError):
    pass


class ClassifierModel(nn.Module):
    """Backbone feature extractor plus task head.

    ``forward`` returns activated outputs (sigmoid score for binary, softmax
    distribution for multiclass); ``logits`` exposes the raw head output for
    loss computation.
    """

    def __init__(
        self,
        backbone: nn.Module,
        head: nn.Module,
        spec: BackboneSpec,
        head_spec: HeadSpec,
        class_names: Sequence[str],
        frozen_mask: dict,
    ):
        super().__init__()
        self.backbone = backbone
        self.head = head
        self.spec = spec
        self.head_spec = head_spec
        self.class_names = tuple(class_names)
        self.frozen_mask = dict(frozen_mask)
        self.epochs_trained = 0

    def train(self, mode: bool = True):
        super().train(mode)
        if mode:
            # frozen groups must stop changing entirely: their batch-norm
            # layers keep running statistics fixed and use them in both modes,
            # otherwise train-time and eval-time features drift apart
            for module in self.modules():
                if isinstance(module, nn.modules.batchnorm._BatchNorm):
                    own = list(module.parameters(recurse=False))
                    if own and all(not p.requires_grad for p in own):
                        module.eval()
        return self

    def logits(self, x: torch.Tensor) -> torch.Tensor:
        return self.head(self.backbone(x))

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        raw = self.logits(x)
        if self.head_spec.task == BINARY:
            return torch.sigmoid(raw)
        return torch.softmax(raw, dim=-1)

    def scores(self, x: torch.Tensor) -> torch.Tensor:
        """Per-class scores with rows summing to 1, for either task.

        Binary output is expanded to two columns (negative, positive) so
        downstream metric code sees one layout.
        """
        out = self.forward(x)
        if self.head_spec.task == BINARY:
            return torch.cat([1.0 - out, out], dim=-1)
        return out

    def trainable_parameters(self):
        return [p for p in self.parameters() if p.requires_grad]


def default_class_names(task: str) -> tuple:
    return BINARY_CLASSES if task == BINARY else MULTICLASS_CLASSES


def _load_pretrained(backbone, spec: BackboneSpec, provider: WeightProvider):
    target = backbone.net if hasattr(backbone, "net") else backbone
    try:
        state = provider.fetch(spec.weight_source_id)
    except WeightFetchFailure:
        # hybrids can still seed their convolutional trunk from a stock
        # classification checkpoint when no full checkpoint is cached
        if isinstance(backbone, ConvViT):
            load_resnet50_trunk(backbone, provider.fetch(_RESNET50_SOURCE))
            return
        raise
    missing, _unexpected = target.load_state_dict(state, strict=False)
    if missing:
        raise WeightFetchFailure(
            f"weights for {spec.weight_source_id!r} missing {len(missing)} keys "
            f"(first: {missing[0]})"
        )


def build_model(
    backbone_spec: BackboneSpec,
    head_spec: HeadSpec,
    *,
    pretrained: bool = True,
    provider: Optional[WeightProvider] = None,
    seed: int = 0,
    class_names: Optional[Sequence[str]] = None,
) -> ClassifierModel:
    """Build a classifier: seeded init, optional pretrained load, freezing.

    The freeze boundary names the first trainable layer group; all groups
    before it have requires_grad cleared and are recorded in frozen_mask.
    """
    entry = _entry(backbone_spec.name)  # raises UnknownBackbone
    names = tuple(class_names) if class_names is not None else default_class_names(head_spec.task)
    expected = 2 if head_spec.task == BINARY else head_spec.output_dim
    if len(names) != expected:
        raise ValueError(
            f"{head_spec.task} task needs {expected} class names, got {len(names)}"
        )
    with torch.random.fork_rng(devices=[]):
        torch.manual_seed(derive_seed(seed, backbone_spec.name + "/backbone"))
        backbone = build_raw(backbone_spec.name)
        if pretrained:
            _load_pretrained(backbone, backbone_spec, provider or default_provider())
        if backbone.feature_dim != backbone_spec.feature_dim:
            raise IncompatibleHead(
                f"spec says feature_dim={backbone_spec.feature_dim} but "
                f"{backbone_spec.name} produces {backbone.feature_dim}"
            )
        torch.manual_seed(derive_seed(seed, backbone_spec.name + "/head"))
        head = build_head(head_spec, backbone_spec.feature_dim)

    groups = backbone.layer_groups()
    group_names = [name for name, _ in groups]
    if backbone_spec.freeze_boundary not in group_names:
        raise UnknownLayerGroup(
            f"freeze boundary {backbone_spec.freeze_boundary!r} not in "
            f"{group_names} for {backbone_spec.name}"
        )
    boundary = group_names.index(backbone_spec.freeze_boundary)

    frozen_mask = {}
    for param_name, param in backbone.named_parameters():
        group = group_of_parameter(groups, param_name)
        if group is None:
            raise RuntimeError(
                f"parameter {param_name!r} of {backbone_spec.name} belongs to no layer group"
            )
        frozen = group_names.index(group) < boundary
        param.requires_grad = not frozen
        frozen_mask[f"backbone.{param_name}"] = frozen
    for param_name, param in head.named_parameters():
        param.requires_grad = True
        frozen_mask[f"head.{param_name}"] = False

    return ClassifierModel(backbone, head, backbone_spec, head_spec, names, frozen_mask)
