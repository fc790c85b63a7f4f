"""
Noise schedules and per-step DDIM coefficients.
"""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ...errors import ErrorCode, ScheduleError

logger = logging.getLogger(__name__)

DEFAULT_T_TRAIN = 1000
DEFAULT_T_SAMPLE = 50
DEFAULT_BETA_START = 8.5e-4
DEFAULT_BETA_END = 1.2e-2


@dataclass(frozen=True, eq=False)
class NoiseSchedule:
    """
    Cumulative signal coefficients over the training grid plus the sampled subset.

    ``alpha_bar[t]`` is the product of ``1 - beta_i`` for i <= t. Sampling is
    deterministic (eta = 0).
    """
    alpha_bar: np.ndarray
    sample_steps: np.ndarray
    beta_start: float = DEFAULT_BETA_START
    beta_end: float = DEFAULT_BETA_END
    sigma_eta: float = 0.0

    def __post_init__(self):
        alpha_bar = np.asarray(self.alpha_bar, dtype=np.float64)
        steps = np.asarray(self.sample_steps, dtype=np.int64)
        if alpha_bar.ndim != 1 or alpha_bar.size < 1:
            raise ScheduleError("alpha_bar must be a non-empty vector")
        if np.any(alpha_bar <= 0) or np.any(alpha_bar > 1):
            raise ScheduleError("alpha_bar values must lie in (0, 1]")
        if np.any(np.diff(alpha_bar) >= 0):
            raise ScheduleError("alpha_bar must be strictly decreasing")
        if alpha_bar[0] <= 0.99:
            raise ScheduleError(f"alpha_bar[0] must exceed 0.99, got {alpha_bar[0]:.6f}")
        if steps.ndim != 1 or steps.size < 1:
            raise ScheduleError("sample_steps must be a non-empty vector")
        if np.any(np.diff(steps) <= 0):
            raise ScheduleError("sample_steps must be strictly increasing")
        if steps[0] < 0 or steps[-1] >= alpha_bar.size:
            raise ScheduleError("sample_steps must lie in [0, t_train)")
        if self.sigma_eta != 0.0:
            raise ScheduleError("only deterministic DDIM (sigma_eta = 0) is supported")
        alpha_bar.setflags(write=False)
        steps.setflags(write=False)
        object.__setattr__(self, "alpha_bar", alpha_bar)
        object.__setattr__(self, "sample_steps", steps)

    @property
    def t_train(self) -> int:
        return int(self.alpha_bar.size)

    @property
    def t_sample(self) -> int:
        return int(self.sample_steps.size)

    def timestep(self, k: int) -> int:
        """Training timestep of sample-step index ``k``."""
        self._check_index(k)
        return int(self.sample_steps[k])

    def alpha_bar_at(self, k: int) -> float:
        """ᾱ at sample-step index ``k``."""
        self._check_index(k)
        return float(self.alpha_bar[self.sample_steps[k]])

    def ddim_pair(self, k: int) -> Tuple[float, float]:
        """``(ᾱ_t, ᾱ_prev)`` for sample-step ``k``; ᾱ_prev = 1 at k = 0."""
        abar_t = self.alpha_bar_at(k)
        abar_prev = 1.0 if k == 0 else float(self.alpha_bar[self.sample_steps[k - 1]])
        return abar_t, abar_prev

    def betas(self) -> np.ndarray:
        """Per-step β recovered from consecutive ᾱ ratios."""
        return betas_from_alpha_bar(self.alpha_bar)

    def resampled(self, t_sample: int) -> "NoiseSchedule":
        """Same training grid with a different number of sampled steps."""
        if t_sample == self.t_sample:
            return self
        return NoiseSchedule(
            alpha_bar=self.alpha_bar,
            sample_steps=uniform_steps(self.t_train, t_sample),
            beta_start=self.beta_start,
            beta_end=self.beta_end,
        )

    def to_dict(self) -> dict:
        return {
            "t_train": self.t_train,
            "t_sample": self.t_sample,
            "beta_start": self.beta_start,
            "beta_end": self.beta_end,
        }

    def _check_index(self, k: int) -> None:
        if not (0 <= k < self.t_sample):
            raise ScheduleError(
                f"sample-step index {k} out of range [0, {self.t_sample})",
                code=ErrorCode.STEP_OUT_OF_RANGE,
            )


def uniform_steps(t_train: int, t_sample: int) -> np.ndarray:
    """``t_sample`` uniformly spaced training timesteps starting at 0."""
    if not (1 <= t_sample <= t_train):
        raise ScheduleError(f"need 1 <= t_sample <= t_train, got {t_sample} and {t_train}")
    stride = t_train // t_sample
    return np.arange(t_sample, dtype=np.int64) * stride


def betas_from_alpha_bar(alpha_bar: np.ndarray) -> np.ndarray:
    alpha_bar = np.asarray(alpha_bar, dtype=np.float64)
    ratios = alpha_bar[1:] / alpha_bar[:-1]
    return np.concatenate([[1.0 - alpha_bar[0]], 1.0 - ratios])


def build_schedule(
    t_train: int = DEFAULT_T_TRAIN,
    t_sample: int = DEFAULT_T_SAMPLE,
    beta_start: float = DEFAULT_BETA_START,
    beta_end: float = DEFAULT_BETA_END,
) -> NoiseSchedule:
    """
    Scaled-linear schedule: sqrt(beta) is linear from sqrt(beta_start) to sqrt(beta_end).

    Raises:
        ScheduleError: invalid step counts or beta range.
    """
    if not (1 <= t_sample <= t_train):
        raise ScheduleError(f"need 1 <= t_sample <= t_train, got {t_sample} and {t_train}")
    if not (0.0 < beta_start <= beta_end < 1.0):
        raise ScheduleError(
            f"need 0 < beta_start <= beta_end < 1, got {beta_start} and {beta_end}"
        )
    betas = np.linspace(np.sqrt(beta_start), np.sqrt(beta_end), t_train, dtype=np.float64) ** 2
    alpha_bar = np.cumprod(1.0 - betas)
    logger.debug(
        "built schedule t_train=%d t_sample=%d alpha_bar[-1]=%.6g",
        t_train, t_sample, alpha_bar[-1],
    )
    return NoiseSchedule(
        alpha_bar=alpha_bar,
        sample_steps=uniform_steps(t_train, t_sample),
        beta_start=float(beta_start),
        beta_end=float(beta_end),
    )


def ddim_pair(schedule: NoiseSchedule, k: int) -> Tuple[float, float]:
    """Module-level form of ``NoiseSchedule.ddim_pair``."""
    return schedule.ddim_pair(k)
