"""
Score-combination rules.

All combinators are affine in each ε argument and return fresh arrays.
Degenerate scales return a copy of the matching input so the reductions
hold bit-exactly.
"""
from typing import Optional

import numpy as np

from ...errors import ErrorCode, GuidanceError
from ...types import CONTENT_DIM, STYLE_BINS, ConditionEmbedding, Injection, check_same_shape


def _check_scale(name: str, value: float) -> float:
    value = float(value)
    if not np.isfinite(value) or value < 0:
        raise GuidanceError(f"{name} must be finite and non-negative, got {value}")
    return value


def cfg_combine(eps_uncond: np.ndarray, eps_cond: np.ndarray, omega: float) -> np.ndarray:
    """eps_uncond + omega * (eps_cond - eps_uncond)."""
    check_same_shape(eps_uncond, eps_cond, "guidance branches")
    omega = _check_scale("omega", omega)
    if omega == 0.0:
        return np.array(eps_uncond, dtype=np.float64)
    if omega == 1.0:
        return np.array(eps_cond, dtype=np.float64)
    return eps_uncond + omega * (eps_cond - eps_uncond)


def negative_combine(eps_neg: np.ndarray, eps_pos: np.ndarray, omega_i: float) -> np.ndarray:
    """
    eps_neg + omega_i * (eps_pos - eps_neg).

    Serves both the prompt form (negative branch from a text condition) and
    the embedding form (negative branch from extractor embeddings).
    """
    check_same_shape(eps_neg, eps_pos, "guidance branches")
    omega_i = _check_scale("omega_i", omega_i)
    if omega_i == 0.0:
        return np.array(eps_neg, dtype=np.float64)
    if omega_i == 1.0:
        return np.array(eps_pos, dtype=np.float64)
    return eps_neg + omega_i * (eps_pos - eps_neg)


def dual_scale_combine(
    eps_base: np.ndarray,
    eps_pos: np.ndarray,
    eps_neg: np.ndarray,
    omega_plus: float,
    omega_minus: float,
) -> np.ndarray:
    """eps_base + omega_plus * (eps_pos - eps_base) - omega_minus * (eps_neg - eps_base)."""
    check_same_shape(eps_base, eps_pos, "guidance branches")
    check_same_shape(eps_base, eps_neg, "guidance branches")
    omega_plus = _check_scale("omega_plus", omega_plus)
    omega_minus = _check_scale("omega_minus", omega_minus)
    if omega_minus == 0.0:
        return cfg_combine(eps_base, eps_pos, omega_plus)
    return (
        eps_base
        + omega_plus * (eps_pos - eps_base)
        - omega_minus * (eps_neg - eps_base)
    )


def build_negative_embedding(
    style_of_content: np.ndarray,
    content_of_style: np.ndarray,
    style_dim: Optional[int] = None,
    content_dim: int = CONTENT_DIM,
) -> ConditionEmbedding:
    """
    Negative condition from the content image's style and the style image's content.

    Slots are kept verbatim. Without an explicit ``style_dim`` the style slot
    must have the extractor length ``2 * C + 8`` for some C >= 1.

    Raises:
        GuidanceError: a slot has the wrong length.
    """
    style = np.asarray(style_of_content, dtype=np.float64).ravel()
    content = np.asarray(content_of_style, dtype=np.float64).ravel()
    if style_dim is None:
        extra = style.size - STYLE_BINS
        if extra < 2 or extra % 2:
            raise GuidanceError(
                f"style slot of length {style.size} is not 2*C+{STYLE_BINS}",
                code=ErrorCode.INVALID_EMBEDDING,
            )
    elif style.size != style_dim:
        raise GuidanceError(
            f"style slot has length {style.size}, expected {style_dim}",
            code=ErrorCode.INVALID_EMBEDDING,
        )
    if content.size != content_dim:
        raise GuidanceError(
            f"content slot has length {content.size}, expected {content_dim}",
            code=ErrorCode.INVALID_EMBEDDING,
        )
    return ConditionEmbedding(style, content, null_flag=False, injection=Injection.FULL,
                              label="negative")
