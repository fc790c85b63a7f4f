"""
Desk-scale evaluation metrics.
"""
from .fidelity import (
    artfid_composite,
    band_ratio,
    content_embedding_distance,
    content_l2,
    high_band_energy,
    pearson,
    style_embedding_distance,
)
from .frechet import FeatureSet, frechet_gaussian, score_batch, trace_sqrt_product

__all__ = [
    "content_l2",
    "artfid_composite",
    "band_ratio",
    "high_band_energy",
    "style_embedding_distance",
    "content_embedding_distance",
    "pearson",
    "FeatureSet",
    "frechet_gaussian",
    "trace_sqrt_product",
    "score_batch",
]
