"""
The ε-prediction contract every score model satisfies.
"""
import copy
from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from ...errors import ErrorCode, ModelError, ShapeError
from ...types import ConditionEmbedding, GridShape, as_grid, shape_of
from ..schedule import NoiseSchedule


class ScoreModel(ABC):
    """
    Predicts the noise contained in a latent.

    Implementations provide ``eps_from_alpha_bar`` on a continuous noise level
    and ``log_density`` of the matching marginal; ``predict_eps`` looks the
    level up from the bound schedule. ε̂ relates to the score by
    ε̂ = -sqrt(1 - ᾱ) * grad log p(z).
    """

    def __init__(self, shape: GridShape, schedule: NoiseSchedule):
        self._shape = shape_of(shape)
        self._schedule = schedule

    @property
    def shape(self) -> GridShape:
        return self._shape

    @property
    def schedule(self) -> NoiseSchedule:
        return self._schedule

    def bind(self, schedule: NoiseSchedule) -> "ScoreModel":
        """A shallow copy of this model reading ᾱ from ``schedule``."""
        bound = copy.copy(self)
        bound._schedule = schedule
        return bound

    def check_grid(self, z) -> np.ndarray:
        grid = as_grid(z, "latent")
        if grid.shape != self._shape:
            raise ShapeError(
                f"latent shape {grid.shape} does not match model shape {self._shape}"
            )
        return grid

    def predict_eps(
        self, z: np.ndarray, t: int, cond: Optional[ConditionEmbedding] = None
    ) -> np.ndarray:
        """ε̂ for latent ``z`` at sample-step index ``t`` under ``cond``."""
        grid = self.check_grid(z)
        abar = self._schedule.alpha_bar_at(t)
        return self.eps_from_alpha_bar(grid, abar, cond)

    @abstractmethod
    def eps_from_alpha_bar(
        self, z: np.ndarray, abar: float, cond: Optional[ConditionEmbedding] = None
    ) -> np.ndarray:
        """ε̂ at an arbitrary noise level ``abar`` in (0, 1]."""

    @abstractmethod
    def log_density(
        self, z: np.ndarray, abar: float, cond: Optional[ConditionEmbedding] = None
    ) -> float:
        """Log density of the noised marginal at level ``abar``."""


def check_alpha_bar(abar: float) -> float:
    abar = float(abar)
    if not (0.0 < abar <= 1.0):
        raise ModelError(
            f"noise level alpha_bar must lie in (0, 1], got {abar}",
            code=ErrorCode.INVALID_SCHEDULE,
        )
    return abar
