from .bundle import (
    ChecksumMismatch,
    DeploymentBundle,
    IncompleteBundle,
    SchemaVersionUnsupported,
    UntrainedModel,
    WriteFailure,
    export_bundle,
    load_bundle,
    read_manifest,
)
from .classifier import (
    ClassifierModel,
    IncompatibleHead,
    UnknownLayerGroup,
    build_model,
    default_class_names,
)
from .heads import BINARY, MULTICLASS, HeadSpec, InvalidHeadSpec, build_head
from .inference import image_to_tensor, predict_scores
from .providers import (
    ChainProvider,
    LocalCacheProvider,
    TorchvisionProvider,
    WeightFetchFailure,
    WeightMetadata,
    WeightProvider,
    default_provider,
)
from .registry import (
    BackboneSpec,
    UnknownBackbone,
    backbone_names,
    build_raw,
    family_of,
    get_spec,
    with_boundary,
)

__all__ = [
    "BINARY",
    "BackboneSpec",
    "ChainProvider",
    "ChecksumMismatch",
    "ClassifierModel",
    "DeploymentBundle",
    "HeadSpec",
    "IncompatibleHead",
    "IncompleteBundle",
    "InvalidHeadSpec",
    "LocalCacheProvider",
    "MULTICLASS",
    "SchemaVersionUnsupported",
    "TorchvisionProvider",
    "UnknownBackbone",
    "UnknownLayerGroup",
    "UntrainedModel",
    "WeightFetchFailure",
    "WeightMetadata",
    "WeightProvider",
    "WriteFailure",
    "backbone_names",
    "build_head",
    "build_model",
    "build_raw",
    "default_class_names",
    "default_provider",
    "export_bundle",
    "family_of",
    "get_spec",
    "image_to_tensor",
    "load_bundle",
    "predict_scores",
    "read_manifest",
    "with_boundary",
]
