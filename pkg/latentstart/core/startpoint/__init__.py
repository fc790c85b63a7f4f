"""
Frequency-manipulated startpoints and the ablation variants.
"""
from .variants import (
    NOISE_STREAM,
    VARIANT_STREAM,
    StartpointKind,
    StartpointSpec,
    frequency_manipulate,
    make_variant,
    parse_kind,
)

__all__ = [
    "StartpointKind",
    "StartpointSpec",
    "frequency_manipulate",
    "make_variant",
    "parse_kind",
    "NOISE_STREAM",
    "VARIANT_STREAM",
]
