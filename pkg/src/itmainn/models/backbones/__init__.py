from .common import EncoderBlock, FeatureBackbone, Mlp, group_of_parameter
from .hybrid import ConvViT, resnet_vit_small, vit_hybrid_base
from .mobilevit import MobileViT
from .tnt import TNT

__all__ = [
    "ConvViT",
    "EncoderBlock",
    "FeatureBackbone",
    "MobileViT",
    "Mlp",
    "TNT",
    "group_of_parameter",
    "resnet_vit_small",
    "vit_hybrid_base",
]
