"""
Gaussian feature statistics and the Fréchet distance between them.
"""
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np
from scipy import linalg

from ...errors import ErrorCode, MetricsError
from ..models import extract_style
from .fidelity import artfid_composite, content_l2

SYMMETRY_TOLERANCE = 1e-10
PSD_TOLERANCE = 1e-8


@dataclass(frozen=True, eq=False)
class FeatureSet:
    """Mean and covariance of a set of feature vectors."""
    mean: np.ndarray
    covariance: np.ndarray
    vectors: Optional[np.ndarray] = None

    def __post_init__(self):
        mean = np.atleast_1d(np.asarray(self.mean, dtype=np.float64))
        cov = np.atleast_2d(np.asarray(self.covariance, dtype=np.float64))
        if mean.ndim != 1 or cov.shape != (mean.size, mean.size):
            raise MetricsError(f"covariance shape {cov.shape} does not match mean size {mean.size}")
        if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(cov))):
            raise MetricsError("feature statistics contain non-finite values")
        if np.max(np.abs(cov - cov.T), initial=0.0) > SYMMETRY_TOLERANCE:
            raise MetricsError("covariance is not symmetric", code=ErrorCode.NOT_PSD)
        cov = 0.5 * (cov + cov.T)
        lowest = float(linalg.eigvalsh(cov)[0])
        if lowest < -PSD_TOLERANCE:
            raise MetricsError(
                f"covariance is not positive semi-definite (eigenvalue {lowest:.3e})",
                code=ErrorCode.NOT_PSD,
            )
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", cov)

    @property
    def dim(self) -> int:
        return int(self.mean.size)

    @classmethod
    def from_vectors(cls, vectors: Sequence[np.ndarray]) -> "FeatureSet":
        """Sample mean and unbiased sample covariance of at least two vectors."""
        data = np.asarray([np.ravel(v) for v in vectors], dtype=np.float64)
        if data.ndim != 2 or data.shape[0] < 2:
            raise MetricsError("a feature set needs at least two vectors of equal length")
        return cls(data.mean(axis=0), np.cov(data, rowvar=False), data)

    @classmethod
    def from_moments(cls, mean, covariance) -> "FeatureSet":
        return cls(mean, covariance)


def _sqrtm_psd(matrix: np.ndarray) -> np.ndarray:
    """Symmetric square root via eigendecomposition, negative eigenvalues clamped to 0."""
    values, vectors = linalg.eigh(matrix)
    values = np.clip(values, 0.0, None)
    return (vectors * np.sqrt(values)) @ vectors.T


def trace_sqrt_product(sigma_p: np.ndarray, sigma_q: np.ndarray) -> float:
    """tr((Σp Σq)^1/2) computed as tr((A Σq A)^1/2) with A = Σp^1/2."""
    root = _sqrtm_psd(sigma_p)
    inner = root @ sigma_q @ root
    values = linalg.eigvalsh(0.5 * (inner + inner.T))
    return float(np.sum(np.sqrt(np.clip(values, 0.0, None))))


def frechet_gaussian(p: FeatureSet, q: FeatureSet) -> float:
    """
    ||mu_p - mu_q||^2 + tr(Σp + Σq - 2 (Σp Σq)^1/2), clamped at 0.

    Raises:
        MetricsError: the feature sets differ in dimension.
    """
    if p.dim != q.dim:
        raise MetricsError(f"feature dimensions differ: {p.dim} vs {q.dim}")
    diff = p.mean - q.mean
    distance = (
        float(diff @ diff)
        + float(np.trace(p.covariance))
        + float(np.trace(q.covariance))
        - 2.0 * trace_sqrt_product(p.covariance, q.covariance)
    )
    return max(distance, 0.0)


def score_batch(
    outputs: Sequence[np.ndarray],
    contents: Sequence[np.ndarray],
    styles: Sequence[np.ndarray],
) -> Dict[str, float]:
    """
    ArtFID analog over a batch of transfers.

    content_dist is the mean content_l2 of outputs against their contents;
    style_dist is the Fréchet distance between style features of outputs and
    of style images.
    """
    if not (len(outputs) == len(contents) == len(styles)) or len(outputs) < 2:
        raise MetricsError("score_batch needs at least two matched output/content/style triples")
    content_dist = float(np.mean([content_l2(o, c) for o, c in zip(outputs, contents)]))
    style_dist = frechet_gaussian(
        FeatureSet.from_vectors([extract_style(o) for o in outputs]),
        FeatureSet.from_vectors([extract_style(s) for s in styles]),
    )
    return {
        "content_dist": content_dist,
        "style_dist": style_dist,
        "artfid": artfid_composite(content_dist, style_dist),
    }
