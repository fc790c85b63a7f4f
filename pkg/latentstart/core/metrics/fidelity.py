"""
Content, spectral and embedding metrics on single grids.
"""
import numpy as np
from scipy import stats

from ...errors import ErrorCode, MetricsError
from ...types import FilterSpec, as_grid, check_same_shape
from ..fourier import band_energy, fft2, highpass_of, make_lowpass
from ..models import extract_content, extract_style


def content_l2(a: np.ndarray, b: np.ndarray) -> float:
    """Relative L2 distance ``||a - b|| / ||b||``."""
    a = as_grid(a, "output")
    b = as_grid(b, "reference")
    check_same_shape(a, b)
    reference = np.linalg.norm(b)
    if reference == 0.0:
        raise MetricsError("content_l2 reference grid has zero norm")
    return float(np.linalg.norm(a - b) / reference)


def artfid_composite(content_dist: float, style_dist: float) -> float:
    """``(1 + content_dist) * (1 + style_dist)``."""
    if content_dist < 0 or style_dist < 0:
        raise MetricsError(
            f"distances must be non-negative, got {content_dist} and {style_dist}"
        )
    return (1.0 + content_dist) * (1.0 + style_dist)


def _energies(g: np.ndarray, spec: FilterSpec):
    grid = as_grid(g)
    spectrum = fft2(grid)
    mask = make_lowpass(spec, grid.shape[0], grid.shape[1])
    return spectrum, mask


def band_ratio(g: np.ndarray, spec: FilterSpec) -> float:
    """Low-band energy ``sum |f*M|^2`` over total energy ``sum |f|^2``."""
    spectrum, mask = _energies(g, spec)
    total = float(np.sum(np.abs(spectrum) ** 2))
    if total == 0.0:
        raise MetricsError("band_ratio of a zero-energy grid is undefined")
    return band_energy(spectrum, mask) / total


def high_band_energy(g: np.ndarray, spec: FilterSpec) -> float:
    """Energy of ``g`` under the complementary high-pass mask."""
    spectrum, mask = _energies(g, spec)
    return band_energy(spectrum, highpass_of(mask))


def style_embedding_distance(a: np.ndarray, b: np.ndarray) -> float:
    """L2 distance between the style vectors of two grids."""
    return float(np.linalg.norm(extract_style(a) - extract_style(b)))


def content_embedding_distance(a: np.ndarray, b: np.ndarray) -> float:
    """L2 distance between the content vectors of two grids."""
    return float(np.linalg.norm(extract_content(a) - extract_content(b)))


def pearson(x, y) -> float:
    """Pearson correlation of two equal-length samples."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1 or x.size < 2:
        raise MetricsError("pearson needs two 1-D samples of equal length >= 2")
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        raise MetricsError("pearson is undefined for a constant sample",
                           code=ErrorCode.INVALID_METRIC_INPUT)
    return float(stats.pearsonr(x, y)[0])
