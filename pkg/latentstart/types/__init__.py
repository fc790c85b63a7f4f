"""
Domain value types shared by every latentstart module.

Grids are plain ``numpy`` arrays of shape ``(H, W, C)`` and dtype float64;
spectra are complex arrays of the same shape with the DC bin at the centre.
The helpers here validate those conventions once, at module boundaries.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from ..errors import ErrorCode, FilterError, ModelError, ShapeError

# Embedding dimensions of the toy extractors.
STYLE_BINS = 8
CONTENT_POOL = 8
CONTENT_DIM = CONTENT_POOL * CONTENT_POOL

GridShape = Tuple[int, int, int]


def as_grid(data, name: str = "grid") -> np.ndarray:
    """
    Validate and return ``data`` as a float64 ``(H, W, C)`` grid.

    Two-dimensional input is promoted to a single channel.

    Raises:
        ShapeError: wrong number of dimensions or an empty axis.
        ShapeError: non-finite values (code NON_FINITE).
    """
    grid = np.asarray(data, dtype=np.float64)
    if grid.ndim == 2:
        grid = grid[:, :, np.newaxis]
    if grid.ndim != 3 or min(grid.shape) < 1:
        raise ShapeError(f"{name} must have shape (H, W, C), got {grid.shape}")
    if not np.all(np.isfinite(grid)):
        raise ShapeError(f"{name} contains non-finite values", code=ErrorCode.NON_FINITE)
    return grid


def check_same_shape(a: np.ndarray, b: np.ndarray, what: str = "grids") -> None:
    """Raise ShapeError unless ``a`` and ``b`` have identical shapes."""
    if a.shape != b.shape:
        raise ShapeError(f"{what} differ in shape: {a.shape} vs {b.shape}")


class FilterKind(str, Enum):
    """Radial low-pass filter families."""
    GAUSSIAN = "gaussian"
    BUTTERWORTH = "butterworth"
    IDEAL = "ideal"


class Band(str, Enum):
    """Which band a frequency reduction attenuates."""
    LOW = "low"
    HIGH = "high"


@dataclass(frozen=True)
class FilterSpec:
    """
    Parameters of a radial low-pass filter.

    ``sigma`` is read by gaussian filters, ``cutoff`` by butterworth and
    ideal filters, ``order`` by butterworth only. Radii are normalized so
    that r = 1 at min(H, W) / 2 bins from the centre.
    """
    kind: FilterKind = FilterKind.GAUSSIAN
    sigma: float = 0.3
    cutoff: float = 0.5
    order: int = 2

    def __post_init__(self):
        object.__setattr__(self, "kind", FilterKind(self.kind))
        if not np.isfinite(self.sigma) or self.sigma <= 0:
            raise FilterError(f"filter sigma must be positive, got {self.sigma}")
        if not (0 < self.cutoff <= 1):
            raise FilterError(f"filter cutoff must lie in (0, 1], got {self.cutoff}")
        if int(self.order) != self.order or self.order < 1:
            raise FilterError(f"filter order must be a positive integer, got {self.order}")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "sigma": self.sigma,
            "cutoff": self.cutoff,
            "order": int(self.order),
        }


class Injection(str, Enum):
    """Which slots of a condition a conditional model reads."""
    FULL = "full"
    STYLE = "style"


@dataclass(frozen=True, eq=False)
class ConditionEmbedding:
    """
    A condition with a style slot and a content slot.

    The null condition (``null_flag``) has both slots zero. Equality is by
    identity; compare slots with ``same_value``.
    """
    style_slot: np.ndarray
    content_slot: np.ndarray
    null_flag: bool = False
    injection: Injection = Injection.FULL
    label: Optional[str] = field(default=None)

    def __post_init__(self):
        style = np.asarray(self.style_slot, dtype=np.float64).ravel()
        content = np.asarray(self.content_slot, dtype=np.float64).ravel()
        if not (np.all(np.isfinite(style)) and np.all(np.isfinite(content))):
            raise ModelError(
                "condition embedding contains non-finite values",
                code=ErrorCode.INVALID_EMBEDDING,
            )
        if self.null_flag and (np.any(style != 0) or np.any(content != 0)):
            raise ModelError(
                "null condition must have zero slots", code=ErrorCode.INVALID_EMBEDDING
            )
        style.setflags(write=False)
        content.setflags(write=False)
        object.__setattr__(self, "style_slot", style)
        object.__setattr__(self, "content_slot", content)
        object.__setattr__(self, "injection", Injection(self.injection))

    @classmethod
    def null(cls, style_dim: int, content_dim: int = CONTENT_DIM) -> "ConditionEmbedding":
        """The null condition for the given slot dimensions."""
        return cls(np.zeros(style_dim), np.zeros(content_dim), null_flag=True)

    @property
    def style_dim(self) -> int:
        return int(self.style_slot.size)

    @property
    def content_dim(self) -> int:
        return int(self.content_slot.size)

    def vector(self) -> np.ndarray:
        """The slots read for label matching under this condition's injection mode."""
        if self.injection is Injection.STYLE:
            return self.style_slot
        return np.concatenate([self.style_slot, self.content_slot])

    def with_injection(self, injection: Injection) -> "ConditionEmbedding":
        return ConditionEmbedding(
            self.style_slot, self.content_slot, self.null_flag, Injection(injection), self.label
        )

    def same_value(self, other: "ConditionEmbedding") -> bool:
        """Slot-wise equality, ignoring flags."""
        return bool(
            np.array_equal(self.style_slot, other.style_slot)
            and np.array_equal(self.content_slot, other.content_slot)
        )

    def to_dict(self) -> dict:
        return {
            "style": self.style_slot.tolist(),
            "content": self.content_slot.tolist(),
            "null": self.null_flag,
            "injection": self.injection.value,
            "label": self.label,
        }


def style_dim_for(channels: int) -> int:
    """Length of the style embedding for a grid with ``channels`` channels."""
    return 2 * channels + STYLE_BINS


def shape_of(values: Sequence[int]) -> GridShape:
    """Coerce a three-element sequence into a grid shape."""
    if len(values) != 3 or any(int(v) < 1 for v in values):
        raise ShapeError(f"grid shape must be three positive integers, got {list(values)}")
    return int(values[0]), int(values[1]), int(values[2])
