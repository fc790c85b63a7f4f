"""
Noise schedule construction and DDIM step coefficients.
"""
from .noise import (
    DEFAULT_BETA_END,
    DEFAULT_BETA_START,
    DEFAULT_T_SAMPLE,
    DEFAULT_T_TRAIN,
    NoiseSchedule,
    betas_from_alpha_bar,
    build_schedule,
    ddim_pair,
    uniform_steps,
)

__all__ = [
    "NoiseSchedule",
    "build_schedule",
    "ddim_pair",
    "betas_from_alpha_bar",
    "uniform_steps",
    "DEFAULT_T_TRAIN",
    "DEFAULT_T_SAMPLE",
    "DEFAULT_BETA_START",
    "DEFAULT_BETA_END",
]
