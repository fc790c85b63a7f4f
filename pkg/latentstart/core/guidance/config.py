"""
Guidance configuration and the per-step guided ε evaluation.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ...errors import GuidanceError
from ...types import ConditionEmbedding
from ..models import ScoreModel
from .combine import cfg_combine, dual_scale_combine, negative_combine


class GuidanceMode(str, Enum):
    """How the model branches are combined at every step."""
    NONE = "none"
    CFG = "cfg"
    NEGATIVE = "negative"
    DUAL = "dual"


@dataclass(frozen=True, eq=False)
class GuidanceConfig:
    """
    Guidance mode, scales and conditions.

    ``null`` is the unconditional branch; leaving it ``None`` asks the model
    for its unconditional prediction. Only the scales the mode uses are read:
    ``omega`` for cfg, ``omega_i`` for negative, ``omega_plus`` and
    ``omega_minus`` for dual.
    """
    mode: GuidanceMode = GuidanceMode.NONE
    omega: float = 1.0
    omega_i: float = 1.5
    omega_plus: float = 1.0
    omega_minus: float = 0.0
    positive: Optional[ConditionEmbedding] = None
    negative: Optional[ConditionEmbedding] = None
    null: Optional[ConditionEmbedding] = None

    def __post_init__(self):
        object.__setattr__(self, "mode", GuidanceMode(self.mode))
        for name in ("omega", "omega_i", "omega_plus", "omega_minus"):
            value = float(getattr(self, name))
            if not np.isfinite(value) or value < 0:
                raise GuidanceError(f"{name} must be finite and non-negative, got {value}")
            object.__setattr__(self, name, value)
        if self.mode in (GuidanceMode.NEGATIVE, GuidanceMode.DUAL) and self.negative is None:
            raise GuidanceError(
                f"guidance mode '{self.mode.value}' needs a negative condition",
                hints=["build one with build_negative_embedding"],
            )

    @property
    def branches(self) -> int:
        """Model evaluations per step."""
        return {
            GuidanceMode.NONE: 1,
            GuidanceMode.CFG: 2,
            GuidanceMode.NEGATIVE: 2,
            GuidanceMode.DUAL: 3,
        }[self.mode]

    def to_dict(self) -> dict:
        data = {"mode": self.mode.value}
        if self.mode is GuidanceMode.CFG:
            data["omega"] = self.omega
        elif self.mode is GuidanceMode.NEGATIVE:
            data["omega_i"] = self.omega_i
        elif self.mode is GuidanceMode.DUAL:
            data["omega_plus"] = self.omega_plus
            data["omega_minus"] = self.omega_minus
        data["positive"] = self.positive.label if self.positive is not None else None
        data["negative"] = self.negative.label if self.negative is not None else None
        return data


def guided_eps(model: ScoreModel, z: np.ndarray, t: int, config: GuidanceConfig) -> np.ndarray:
    """Evaluate the branches ``config.mode`` needs at step ``t`` and combine them."""
    mode = config.mode
    eps_pos = model.predict_eps(z, t, config.positive)
    if mode is GuidanceMode.NONE:
        return eps_pos
    if mode is GuidanceMode.CFG:
        if config.omega == 1.0:
            return eps_pos
        return cfg_combine(model.predict_eps(z, t, config.null), eps_pos, config.omega)
    if mode is GuidanceMode.NEGATIVE:
        if config.omega_i == 1.0:
            return eps_pos
        return negative_combine(model.predict_eps(z, t, config.negative), eps_pos, config.omega_i)
    return dual_scale_combine(
        model.predict_eps(z, t, config.null),
        eps_pos,
        model.predict_eps(z, t, config.negative),
        config.omega_plus,
        config.omega_minus,
    )
