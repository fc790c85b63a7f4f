"""
Toy feature extractors producing the style and content slots of a condition.
"""
from typing import Optional

import numpy as np

from ...errors import ErrorCode, ShapeError
from ...types import CONTENT_POOL, STYLE_BINS, ConditionEmbedding, as_grid
from ..fourier import fft2, radial_distance

# Relative AC energy treated as zero.
AC_FLOOR = 1e-20


def radial_profile(img: np.ndarray, bins: int = STYLE_BINS) -> np.ndarray:
    """
    Fraction of non-DC spectral energy falling in each of ``bins`` radial rings.

    Rings split ``(0, r_max]`` evenly; the DC bin is excluded. A grid whose
    AC energy is at round-off level gives all zeros.
    """
    grid = as_grid(img)
    power = np.sum(np.abs(fft2(grid)) ** 2, axis=2)
    r = radial_distance(grid.shape[0], grid.shape[1])
    ac = r > 0
    energy, _ = np.histogram(r[ac], bins=bins, range=(0.0, float(r.max())), weights=power[ac])
    total = energy.sum()
    if total <= AC_FLOOR * power.sum():
        return np.zeros(bins)
    return energy / total


def extract_style(img: np.ndarray) -> np.ndarray:
    """
    Style vector: per-channel mean, per-channel std, then the radial profile.

    Length is ``2 * C + 8``.
    """
    grid = as_grid(img)
    means = grid.mean(axis=(0, 1))
    stds = grid.std(axis=(0, 1))
    return np.concatenate([means, stds, radial_profile(grid)])


def extract_content(img: np.ndarray) -> np.ndarray:
    """
    Content vector: 8x8 average-pooled gradient magnitude, flattened row-major.

    Gradients are central differences (one-sided at the border) and the
    magnitude is averaged over channels. The map follows the image, so a
    translated image gives a different vector.
    """
    grid = as_grid(img)
    h, w = grid.shape[:2]
    if h < CONTENT_POOL or w < CONTENT_POOL:
        raise ShapeError(
            f"content extraction needs H, W >= {CONTENT_POOL}, got {h}x{w}",
            code=ErrorCode.GRID_TOO_SMALL,
        )
    gy, gx = np.gradient(grid, axis=(0, 1))
    magnitude = np.sqrt(gx ** 2 + gy ** 2).mean(axis=2)

    row_blocks = np.array_split(np.arange(h), CONTENT_POOL)
    col_blocks = np.array_split(np.arange(w), CONTENT_POOL)
    pooled = np.array(
        [[magnitude[np.ix_(rows, cols)].mean() for cols in col_blocks] for rows in row_blocks]
    )
    return pooled.ravel()


def label_embedding(img: np.ndarray, label: Optional[str] = None) -> ConditionEmbedding:
    """Condition whose slots are the extractor outputs of ``img``."""
    return ConditionEmbedding(extract_style(img), extract_content(img), label=label)
