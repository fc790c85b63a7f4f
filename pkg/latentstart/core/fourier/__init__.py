"""
Grid Fourier transforms, radial filters and band decomposition.
"""
from .filters import (
    band_energy,
    highpass_of,
    make_lowpass,
    radial_distance,
    reduce_band,
    split_bands,
)
from .transforms import fft2, ifft2

__all__ = [
    "fft2",
    "ifft2",
    "make_lowpass",
    "highpass_of",
    "reduce_band",
    "split_bands",
    "band_energy",
    "radial_distance",
]
