"""
Deterministic synthetic images for experiments, the CLI and the tests.
"""
from typing import Optional, Sequence, Tuple

import numpy as np

from ..errors import ConfigError, ErrorCode
from ..types import GridShape, shape_of
from ..utils import SeededRng

DATA_STREAM = "data"


def stripes(shape: GridShape, period: int = 4, vertical: bool = True,
            amplitude: float = 1.0, phase: float = 0.0) -> np.ndarray:
    """Sinusoidal stripes; vertical stripes vary along the width."""
    h, w, c = shape_of(shape)
    axis = np.arange(w if vertical else h, dtype=np.float64)
    wave = amplitude * np.sin(2.0 * np.pi * axis / period + phase)
    plane = np.tile(wave, (h, 1)) if vertical else np.tile(wave[:, np.newaxis], (1, w))
    return np.repeat(plane[:, :, np.newaxis], c, axis=2)


def checkerboard(shape: GridShape, block: int = 2, amplitude: float = 1.0) -> np.ndarray:
    h, w, c = shape_of(shape)
    rows = (np.arange(h) // block)[:, np.newaxis]
    cols = (np.arange(w) // block)[np.newaxis, :]
    plane = np.where((rows + cols) % 2 == 0, amplitude, -amplitude).astype(np.float64)
    return np.repeat(plane[:, :, np.newaxis], c, axis=2)


def blobs(shape: GridShape, count: int = 3, width: float = 1.5, seed: int = 0) -> np.ndarray:
    """Sum of ``count`` Gaussian bumps at seeded positions, one draw per channel."""
    h, w, c = shape_of(shape)
    rng = SeededRng(seed, f"{DATA_STREAM}/blobs")
    rows = np.arange(h, dtype=np.float64)[:, np.newaxis]
    cols = np.arange(w, dtype=np.float64)[np.newaxis, :]
    grid = np.zeros((h, w, c))
    for channel in range(c):
        centres = rng.uniform(0.0, 1.0, (count, 2)) * np.array([h - 1, w - 1])
        for cy, cx in centres:
            grid[:, :, channel] += np.exp(-((rows - cy) ** 2 + (cols - cx) ** 2) / (2 * width ** 2))
    return grid


def noise(shape: GridShape, seed: int = 0, sigma: float = 1.0) -> np.ndarray:
    return SeededRng(seed, f"{DATA_STREAM}/noise").normal(shape_of(shape), sigma)


PATTERNS = ("stripes", "stripes_h", "checkerboard", "blobs", "noise")


def pattern(name: str, shape: GridShape, seed: int = 0) -> np.ndarray:
    """
    Named synthetic image.

    Raises:
        ConfigError: unknown pattern name.
    """
    if name == "stripes":
        return stripes(shape)
    if name == "stripes_h":
        return stripes(shape, vertical=False)
    if name == "checkerboard":
        return checkerboard(shape)
    if name == "blobs":
        return blobs(shape, seed=seed)
    if name == "noise":
        return noise(shape, seed=seed)
    raise ConfigError(f"unknown pattern {name!r}", code=ErrorCode.CONFIG_TYPE,
                      hints=[f"choose one of: {', '.join(PATTERNS)}"])


def _mixture(model, label: str):
    if label not in model.label_names:
        raise ConfigError(f"unknown label {label!r}; registered: {model.label_names}",
                          code=ErrorCode.CONFIG_TYPE)
    return model.labels[model.label_names.index(label)].mixture


def label_draw(model, label: str, seed: int = 0) -> np.ndarray:
    """One clean sample from a registered label's mixture."""
    return _mixture(model, label).draw(SeededRng(seed, f"{DATA_STREAM}/label/{label}"))


def mode_pairs(model, content_label: str, style_label: str, count: int,
               seed: int = 0, noise_scale: Optional[float] = None,
               ) -> Sequence[Tuple[np.ndarray, np.ndarray]]:
    """
    ``count`` (content, style) pairs drawn from two labels.

    With ``noise_scale`` set, images are the label prototype plus seeded
    noise of that scale instead of full mixture draws.
    """
    content_mixture = _mixture(model, content_label)
    style_mixture = _mixture(model, style_label)
    rng = SeededRng(seed, f"{DATA_STREAM}/pairs")
    pairs = []
    for i in range(count):
        child = rng.child(i)
        if noise_scale is None:
            content = content_mixture.draw(child.child("content"))
            style = style_mixture.draw(child.child("style"))
        else:
            content = content_mixture.prototype() + noise_scale * child.normal(model.shape)
            style = style_mixture.prototype() + noise_scale * child.normal(model.shape)
        pairs.append((content, style))
    return pairs
