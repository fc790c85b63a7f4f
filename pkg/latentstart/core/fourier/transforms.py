"""
Unitary, DC-centred 2D Fourier transforms over the spatial axes of a grid.

``scipy.fft`` handles arbitrary (non power-of-two) sizes, so latents of any
H x W are accepted. Both directions use ``norm="ortho"`` which makes
Parseval's identity hold with factor 1.
"""
import numpy as np
from scipy import fft as sp_fft

from ...errors import ErrorCode, FourierError, ShapeError
from ...types import as_grid

_AXES = (0, 1)
_NORM = "ortho"
IMAG_TOLERANCE = 1e-9


def _check_spatial(shape) -> None:
    if len(shape) != 3:
        raise ShapeError(f"expected an (H, W, C) array, got shape {tuple(shape)}")
    if shape[0] < 2 or shape[1] < 2:
        raise ShapeError(
            f"transforms need H, W >= 2, got {shape[0]}x{shape[1]}",
            code=ErrorCode.GRID_TOO_SMALL,
        )


def fft2(grid: np.ndarray) -> np.ndarray:
    """Per-channel 2D DFT with the DC bin moved to the centre."""
    grid = as_grid(grid)
    _check_spatial(grid.shape)
    spectrum = sp_fft.fft2(grid, axes=_AXES, norm=_NORM)
    return sp_fft.fftshift(spectrum, axes=_AXES)


def ifft2(spectrum: np.ndarray) -> np.ndarray:
    """
    Inverse of ``fft2``.

    Raises:
        FourierError: the result carries an imaginary part above 1e-9, which
            means the spectrum was not Hermitian.
    """
    spectrum = np.asarray(spectrum, dtype=np.complex128)
    _check_spatial(spectrum.shape)
    if not np.all(np.isfinite(spectrum)):
        raise FourierError("spectrum contains non-finite values", code=ErrorCode.NON_FINITE)
    grid = sp_fft.ifft2(sp_fft.ifftshift(spectrum, axes=_AXES), axes=_AXES, norm=_NORM)
    residue = float(np.max(np.abs(grid.imag))) if grid.size else 0.0
    if residue >= IMAG_TOLERANCE:
        raise FourierError(
            f"inverse transform left an imaginary residue of {residue:.3e}",
            hints=["the spectrum is not Hermitian; check the mask is real and centred"],
        )
    return np.ascontiguousarray(grid.real)
