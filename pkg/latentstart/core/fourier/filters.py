"""
Radial frequency masks and band operations on centred spectra.
"""
from typing import Tuple, Union

import numpy as np

from ...errors import ErrorCode, FilterError, ShapeError
from ...types import Band, FilterKind, FilterSpec


def radial_distance(h: int, w: int) -> np.ndarray:
    """
    Normalized distance of every bin from the centred DC bin.

    The DC bin sits at ``(h // 2, w // 2)`` (the ``fftshift`` convention) and
    r = 1 at ``min(h, w) / 2`` bins from it.
    """
    rows = np.arange(h) - h // 2
    cols = np.arange(w) - w // 2
    dist = np.hypot(rows[:, np.newaxis], cols[np.newaxis, :])
    return dist / (min(h, w) / 2.0)


def make_lowpass(spec: FilterSpec, h: int, w: int) -> np.ndarray:
    """
    Build a single-channel ``(h, w, 1)`` low-pass mask with values in [0, 1].

    gaussian: exp(-r^2 / (2 sigma^2)); butterworth: 1 / (1 + (r/cutoff)^(2n));
    ideal: 1 inside ``r <= cutoff``. All equal 1 at DC.
    """
    if h < 2 or w < 2:
        raise FilterError(f"masks need h, w >= 2, got {h}x{w}", code=ErrorCode.GRID_TOO_SMALL)
    r = radial_distance(h, w)
    if spec.kind is FilterKind.GAUSSIAN:
        mask = np.exp(-(r ** 2) / (2.0 * spec.sigma ** 2))
    elif spec.kind is FilterKind.BUTTERWORTH:
        mask = 1.0 / (1.0 + (r / spec.cutoff) ** (2 * int(spec.order)))
    elif spec.kind is FilterKind.IDEAL:
        mask = (r <= spec.cutoff).astype(np.float64)
    else:  # pragma: no cover - FilterSpec coerces kind
        raise FilterError(f"unknown filter kind {spec.kind!r}")
    return mask[:, :, np.newaxis]


def highpass_of(lowpass_mask: np.ndarray) -> np.ndarray:
    """Complementary high-pass mask, ``1 - M``."""
    mask = np.asarray(lowpass_mask, dtype=np.float64)
    if np.any(mask < 0) or np.any(mask > 1):
        raise FilterError("mask values must lie in [0, 1]")
    return 1.0 - mask


def _check_mask(spectrum: np.ndarray, mask: np.ndarray) -> None:
    if mask.ndim != 3 or mask.shape[:2] != spectrum.shape[:2]:
        raise ShapeError(
            f"mask shape {mask.shape} does not match spectrum spatial shape {spectrum.shape[:2]}"
        )
    if mask.shape[2] not in (1, spectrum.shape[2]):
        raise ShapeError(f"mask has {mask.shape[2]} channels, spectrum {spectrum.shape[2]}")


def split_bands(spectrum: np.ndarray, lowpass_mask: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Return the low-band and high-band components ``(f*M, f*(1-M))``."""
    mask = np.asarray(lowpass_mask, dtype=np.float64)
    _check_mask(spectrum, mask)
    return spectrum * mask, spectrum * (1.0 - mask)


def reduce_band(
    spectrum: np.ndarray,
    lowpass_mask: np.ndarray,
    alpha: float,
    band: Union[Band, str] = Band.LOW,
) -> np.ndarray:
    """
    Attenuate one band of a centred spectrum by ``alpha``.

    ``low``:  alpha * f*M + f*(1-M)
    ``high``: f*M + alpha * f*(1-M)
    """
    if not (0.0 <= alpha <= 1.0):
        raise FilterError(f"alpha must lie in [0, 1], got {alpha}", code=ErrorCode.INVALID_ALPHA)
    band = Band(band)
    mask = np.asarray(lowpass_mask, dtype=np.float64)
    _check_mask(spectrum, mask)
    if alpha == 1.0:
        return np.array(spectrum, dtype=np.complex128, copy=True)
    if band is Band.LOW:
        return alpha * (spectrum * mask) + spectrum * (1.0 - mask)
    return spectrum * mask + alpha * (spectrum * (1.0 - mask))


def band_energy(spectrum: np.ndarray, mask: np.ndarray) -> float:
    """Sum over bins and channels of ``|f * M|^2``."""
    mask = np.asarray(mask, dtype=np.float64)
    _check_mask(spectrum, mask)
    return float(np.sum(np.abs(spectrum * mask) ** 2))
