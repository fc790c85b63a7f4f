"""
Classifier-free, negative and two-scale guidance.
"""
from .combine import build_negative_embedding, cfg_combine, dual_scale_combine, negative_combine
from .config import GuidanceConfig, GuidanceMode, guided_eps

__all__ = [
    "cfg_combine",
    "negative_combine",
    "dual_scale_combine",
    "build_negative_embedding",
    "GuidanceConfig",
    "GuidanceMode",
    "guided_eps",
]
