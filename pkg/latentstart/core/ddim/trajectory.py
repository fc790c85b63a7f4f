"""
Full sampling and inversion trajectories.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from ...errors import DDIMError
from ..guidance import GuidanceConfig, guided_eps
from ..models import ScoreModel
from ..schedule import NoiseSchedule
from .steps import ddim_inverse_step, ddim_step

logger = logging.getLogger(__name__)

# Training timestep recorded for the clean latent.
CLEAN_TIMESTEP = -1


class Direction(str, Enum):
    SAMPLING = "sampling"
    INVERSION = "inversion"


@dataclass
class TrajectoryRecord:
    """
    Ordered ``(training timestep, latent)`` pairs of one DDIM run.

    Timesteps decrease while sampling and increase while inverting; the clean
    latent carries ``CLEAN_TIMESTEP``.
    """
    direction: Direction
    guidance: GuidanceConfig
    entries: List[Tuple[int, np.ndarray]] = field(default_factory=list)

    def append(self, timestep: int, latent: np.ndarray) -> None:
        if self.entries:
            last = self.entries[-1][0]
            increasing = self.direction is Direction.INVERSION
            if (timestep <= last) if increasing else (timestep >= last):
                raise DDIMError(
                    f"{self.direction.value} trajectory timesteps must be strictly "
                    f"{'increasing' if increasing else 'decreasing'}: {last} then {timestep}"
                )
            if latent.shape != self.entries[-1][1].shape:
                raise DDIMError("trajectory latents must share one shape")
        self.entries.append((int(timestep), latent))

    @property
    def initial(self) -> np.ndarray:
        return self.entries[0][1]

    @property
    def final(self) -> np.ndarray:
        return self.entries[-1][1]

    @property
    def timesteps(self) -> List[int]:
        return [t for t, _ in self.entries]

    @property
    def latents(self) -> List[np.ndarray]:
        return [z for _, z in self.entries]

    def norms(self) -> List[float]:
        """L2 norm of every recorded latent."""
        return [float(np.linalg.norm(z)) for _, z in self.entries]

    def rows(self) -> List[Tuple[int, int, float]]:
        """``(step index, training timestep, latent L2 norm)`` per entry."""
        return [(i, t, norm) for i, (t, norm) in enumerate(zip(self.timesteps, self.norms()))]

    def __len__(self) -> int:
        return len(self.entries)


def _bound(model: ScoreModel, schedule: NoiseSchedule) -> ScoreModel:
    return model if model.schedule is schedule else model.bind(schedule)


def sample(
    model: ScoreModel,
    schedule: NoiseSchedule,
    z_T: np.ndarray,
    guidance: Optional[GuidanceConfig] = None,
) -> TrajectoryRecord:
    """
    Denoise ``z_T`` over the sampled steps in decreasing order.

    Every latent is recorded; the last entry is the clean latent at
    ``CLEAN_TIMESTEP``.
    """
    guidance = guidance or GuidanceConfig()
    model = _bound(model, schedule)
    z = model.check_grid(z_T).copy()
    record = TrajectoryRecord(Direction.SAMPLING, guidance)
    record.append(schedule.timestep(schedule.t_sample - 1), z)

    logger.debug("sampling %d steps, guidance=%s", schedule.t_sample, guidance.mode.value)
    for k in range(schedule.t_sample - 1, -1, -1):
        eps = guided_eps(model, z, k, guidance)
        abar_t, abar_prev = schedule.ddim_pair(k)
        z = ddim_step(z, eps, abar_t, abar_prev)
        record.append(schedule.timestep(k - 1) if k > 0 else CLEAN_TIMESTEP, z)
    return record


def invert(
    model: ScoreModel,
    schedule: NoiseSchedule,
    z_0: np.ndarray,
    guidance: Optional[GuidanceConfig] = None,
) -> TrajectoryRecord:
    """
    Map a clean latent to its DDIM startpoint over the sampled steps in increasing order.

    ε for the step leaving a level is evaluated at the current latent, using
    that level's own step index (index 0 for the clean latent). In negative
    mode this is ``negative_combine(ε(negative), ε(positive), omega_i)``.
    """
    guidance = guidance or GuidanceConfig()
    model = _bound(model, schedule)
    z = model.check_grid(z_0).copy()
    record = TrajectoryRecord(Direction.INVERSION, guidance)
    record.append(CLEAN_TIMESTEP, z)

    logger.debug("inverting %d steps, guidance=%s", schedule.t_sample, guidance.mode.value)
    for k in range(schedule.t_sample):
        _, abar_cur = schedule.ddim_pair(k)
        abar_next = schedule.alpha_bar_at(k)
        eps = guided_eps(model, z, max(k - 1, 0), guidance)
        z = ddim_inverse_step(z, eps, abar_cur, abar_next)
        record.append(schedule.timestep(k), z)
    return record
