"""
Single deterministic DDIM steps.

Both directions use the grouping

    z_to = sqrt(a_to / a_from) * z_from
           + sqrt(a_to) * (sqrt(1/a_to - 1) - sqrt(1/a_from - 1)) * eps

which makes each step the exact algebraic inverse of the other when the same
ε is supplied.
"""
import numpy as np

from ...errors import DDIMError, ErrorCode
from ...types import check_same_shape


def _check_level(name: str, value: float) -> float:
    value = float(value)
    if not (0.0 < value <= 1.0):
        raise DDIMError(f"{name} must lie in (0, 1], got {value}")
    return value


def _transfer(z: np.ndarray, eps: np.ndarray, a_from: float, a_to: float) -> np.ndarray:
    check_same_shape(z, eps, "latent and eps")
    coef_z = np.sqrt(a_to / a_from)
    coef_eps = np.sqrt(a_to) * (np.sqrt(1.0 / a_to - 1.0) - np.sqrt(1.0 / a_from - 1.0))
    return coef_z * z + coef_eps * eps


def ddim_step(z_t: np.ndarray, eps: np.ndarray, abar_t: float, abar_prev: float) -> np.ndarray:
    """
    One denoising step from level ``abar_t`` to the cleaner ``abar_prev``.

    Raises:
        DDIMError: levels outside (0, 1] or ``abar_prev < abar_t``.
    """
    abar_t = _check_level("abar_t", abar_t)
    abar_prev = _check_level("abar_prev", abar_prev)
    if abar_prev < abar_t:
        raise DDIMError(
            f"sampling needs abar_prev >= abar_t, got {abar_prev} < {abar_t}",
            code=ErrorCode.ALPHA_BAR_ORDER,
        )
    return _transfer(np.asarray(z_t, dtype=np.float64), np.asarray(eps, dtype=np.float64),
                     abar_t, abar_prev)


def ddim_inverse_step(
    z_t: np.ndarray, eps: np.ndarray, abar_t: float, abar_next: float
) -> np.ndarray:
    """
    One inversion step from level ``abar_t`` to the noisier ``abar_next``.

    Raises:
        DDIMError: levels outside (0, 1] or ``abar_next > abar_t``.
    """
    abar_t = _check_level("abar_t", abar_t)
    abar_next = _check_level("abar_next", abar_next)
    if abar_next > abar_t:
        raise DDIMError(
            f"inversion needs abar_next <= abar_t, got {abar_next} > {abar_t}",
            code=ErrorCode.ALPHA_BAR_ORDER,
        )
    return _transfer(np.asarray(z_t, dtype=np.float64), np.asarray(eps, dtype=np.float64),
                     abar_t, abar_next)
