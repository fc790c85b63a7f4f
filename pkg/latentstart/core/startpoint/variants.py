"""
Startpoint constructions applied to a DDIM latent before sampling.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

import numpy as np

from ...errors import ErrorCode, StartpointError
from ...types import Band, FilterSpec, as_grid
from ...utils import SeededRng
from ...utils.rng import SEED_LIMIT
from ..fourier import fft2, ifft2, make_lowpass, reduce_band

logger = logging.getLogger(__name__)

NOISE_STREAM = "noise"
VARIANT_STREAM = "variant"


class StartpointKind(str, Enum):
    INVERSION = "inversion"
    RANDOM = "random"
    NOISED = "noised"
    SHIFTED = "shifted"
    SCALED = "scaled"
    FREQ_MANIPULATED = "freq_manipulated"


@dataclass(frozen=True)
class StartpointSpec:
    """
    Which startpoint to build and its parameters.

    ``alpha``, ``noise_sigma`` and ``filter`` are read only by
    ``freq_manipulated``. ``per_bin_scale`` draws one scaled-variant multiplier
    per bin instead of one per image; ``shared_shift`` draws one
    shifted-variant offset per image instead of one per bin.
    """
    kind: StartpointKind = StartpointKind.FREQ_MANIPULATED
    alpha: float = 0.7
    noise_sigma: float = 1.0
    filter: FilterSpec = field(default_factory=FilterSpec)
    seed: int = 0
    per_bin_scale: bool = False
    shared_shift: bool = False

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", StartpointKind(self.kind))
        except ValueError as exc:
            raise StartpointError(
                f"unknown startpoint kind {self.kind!r}",
                code=ErrorCode.UNKNOWN_STARTPOINT,
                hints=[f"choose one of: {', '.join(k.value for k in StartpointKind)}"],
            ) from exc
        if not (0.0 <= self.alpha <= 1.0):
            raise StartpointError(f"alpha must lie in [0, 1], got {self.alpha}",
                                  code=ErrorCode.INVALID_ALPHA)
        if not np.isfinite(self.noise_sigma) or self.noise_sigma < 0:
            raise StartpointError(f"noise_sigma must be non-negative, got {self.noise_sigma}")
        if not (0 <= int(self.seed) < SEED_LIMIT):
            raise StartpointError(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "alpha": self.alpha,
            "noise_sigma": self.noise_sigma,
            "filter": self.filter.to_dict(),
            "seed": int(self.seed),
            "per_bin_scale": self.per_bin_scale,
            "shared_shift": self.shared_shift,
        }


def frequency_manipulate(
    z_T: np.ndarray,
    filter: FilterSpec,
    alpha: float,
    noise_sigma: float,
    seed: int,
) -> np.ndarray:
    """
    Attenuate the low band of ``z_T`` by ``alpha`` and add ``(1 - alpha)``-scaled noise.

    z' = ifft2(alpha * f*L + f*H) + (1 - alpha) * eta, eta ~ N(0, noise_sigma^2)
    drawn per bin in the spatial domain from the ``noise`` stream of ``seed``.

    Raises:
        StartpointError: alpha outside [0, 1] or negative noise_sigma.
    """
    grid = as_grid(z_T, "startpoint latent")
    if not (0.0 <= alpha <= 1.0):
        raise StartpointError(f"alpha must lie in [0, 1], got {alpha}",
                              code=ErrorCode.INVALID_ALPHA)
    if not np.isfinite(noise_sigma) or noise_sigma < 0:
        raise StartpointError(f"noise_sigma must be non-negative, got {noise_sigma}")
    if alpha == 1.0:
        return grid.copy()

    mask = make_lowpass(filter, grid.shape[0], grid.shape[1])
    reduced = ifft2(reduce_band(fft2(grid), mask, alpha, Band.LOW))
    if noise_sigma == 0.0:
        return reduced
    eta = SeededRng(seed, NOISE_STREAM).normal(grid.shape, noise_sigma)
    return reduced + (1.0 - alpha) * eta


def make_variant(z_T: np.ndarray, spec: StartpointSpec) -> np.ndarray:
    """
    Build the startpoint ``spec`` describes from the inverted latent ``z_T``.

    random: fresh N(0, I); noised: z_T + N(0, I); shifted: z_T + U(-0.5, 0.5);
    scaled: z_T * u with u ~ U(0.5, 1); inversion: z_T; freq_manipulated:
    ``frequency_manipulate``.
    """
    grid = as_grid(z_T, "startpoint latent")
    kind = spec.kind
    if kind is StartpointKind.INVERSION:
        return grid.copy()
    if kind is StartpointKind.FREQ_MANIPULATED:
        return frequency_manipulate(grid, spec.filter, spec.alpha, spec.noise_sigma, spec.seed)

    rng = SeededRng(spec.seed, VARIANT_STREAM)
    if kind is StartpointKind.RANDOM:
        return rng.normal(grid.shape)
    if kind is StartpointKind.NOISED:
        return grid + rng.normal(grid.shape)
    if kind is StartpointKind.SHIFTED:
        shift = rng.uniform(-0.5, 0.5, None if spec.shared_shift else grid.shape)
        return grid + shift
    if kind is StartpointKind.SCALED:
        scale = rng.uniform(0.5, 1.0, grid.shape if spec.per_bin_scale else None)
        return grid * scale
    raise StartpointError(f"unknown startpoint kind {kind!r}", code=ErrorCode.UNKNOWN_STARTPOINT)


def parse_kind(value: Union[str, StartpointKind]) -> StartpointKind:
    try:
        return StartpointKind(value)
    except ValueError as exc:
        raise StartpointError(
            f"unknown startpoint kind {value!r}", code=ErrorCode.UNKNOWN_STARTPOINT
        ) from exc
