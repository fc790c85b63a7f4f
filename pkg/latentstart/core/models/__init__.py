"""
Score models: the ε-prediction contract, analytic Gaussian mixtures and the
toy feature extractors that produce condition embeddings.
"""
from .base import ScoreModel
from .features import extract_content, extract_style, label_embedding, radial_profile
from .gaussian import (
    ConditionalMixtureModel,
    ConditionLabel,
    GaussianComponent,
    GaussianMixture,
    GaussianMixtureModel,
    isotropic_model,
    make_conditional_mixture,
)
from .loader import load_model, parse_model


def predict_eps(model: ScoreModel, z, t: int, cond=None):
    """Module-level form of ``ScoreModel.predict_eps``."""
    return model.predict_eps(z, t, cond)


__all__ = [
    "ScoreModel",
    "GaussianComponent",
    "GaussianMixture",
    "GaussianMixtureModel",
    "ConditionLabel",
    "ConditionalMixtureModel",
    "isotropic_model",
    "make_conditional_mixture",
    "predict_eps",
    "extract_style",
    "extract_content",
    "label_embedding",
    "radial_profile",
    "load_model",
    "parse_model",
]
