"""
Deterministic DDIM steps and trajectory drivers.
"""
from .steps import ddim_inverse_step, ddim_step
from .trajectory import CLEAN_TIMESTEP, Direction, TrajectoryRecord, invert, sample

__all__ = [
    "ddim_step",
    "ddim_inverse_step",
    "sample",
    "invert",
    "TrajectoryRecord",
    "Direction",
    "CLEAN_TIMESTEP",
]
