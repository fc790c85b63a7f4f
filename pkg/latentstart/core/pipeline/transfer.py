"""
End-to-end startpoint-enhanced style transfer.

Stages, in order:

1. ``negative_embedding``: negative condition from the content image's style
   vector and the style image's content vector.
2. ``inversion``: DDIM inversion of the content with negative guidance.
3. ``startpoint``: frequency manipulation (or an ablation variant).
4. ``sampling``: DDIM sampling with CFG, the style condition read through the
   style slot only.
5. ``metrics``.
"""
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, TypeVar

import numpy as np

from ...errors import LatentStartError, PipelineError
from ...types import Band, ConditionEmbedding, FilterSpec, Injection, as_grid, check_same_shape
from ..ddim import TrajectoryRecord, invert, sample
from ..fourier import fft2, ifft2, make_lowpass, reduce_band
from ..guidance import GuidanceConfig, GuidanceMode, build_negative_embedding
from ..metrics import (
    band_ratio,
    content_embedding_distance,
    content_l2,
    high_band_energy,
    style_embedding_distance,
)
from ..models import ScoreModel, extract_content, extract_style, label_embedding
from ..schedule import NoiseSchedule
from ..startpoint import StartpointSpec, make_variant

logger = logging.getLogger(__name__)

T = TypeVar("T")

STAGES = ("negative_embedding", "inversion", "startpoint", "sampling", "metrics")


class NegativeStage(str, Enum):
    """Where the negative condition is applied."""
    INVERSION = "inversion"
    SAMPLING = "sampling"
    NONE = "none"


@dataclass(frozen=True, eq=False)
class TransferConfig:
    """
    One style-transfer run.

    ``positive_condition`` stands in for the caption of the content image;
    when omitted it is the extractor embedding of the content. The run seed
    overrides ``startpoint.seed``.
    """
    content: np.ndarray
    style: np.ndarray
    positive_condition: Optional[ConditionEmbedding] = None
    omega_i: float = 1.5
    cfg_omega: float = 5.0
    startpoint: StartpointSpec = field(default_factory=StartpointSpec)
    steps: int = 50
    seed: int = 0
    negative_stage: NegativeStage = NegativeStage.INVERSION

    def __post_init__(self):
        content = as_grid(self.content, "content")
        style = as_grid(self.style, "style")
        check_same_shape(content, style, "content and style")
        object.__setattr__(self, "content", content)
        object.__setattr__(self, "style", style)
        object.__setattr__(self, "negative_stage", NegativeStage(self.negative_stage))
        object.__setattr__(self, "startpoint", replace(self.startpoint, seed=int(self.seed)))

    def with_startpoint(self, **changes) -> "TransferConfig":
        return replace(self, startpoint=replace(self.startpoint, **changes))

    def to_dict(self) -> dict:
        return {
            "omega_i": self.omega_i,
            "cfg_omega": self.cfg_omega,
            "steps": self.steps,
            "seed": int(self.seed),
            "negative_stage": self.negative_stage.value,
            "startpoint": self.startpoint.to_dict(),
            "shape": list(self.content.shape),
        }


@dataclass
class TransferResult:
    output: np.ndarray
    startpoint: np.ndarray
    inversion_trajectory: TrajectoryRecord
    sampling_trajectory: TrajectoryRecord
    metrics: Dict[str, float]
    manifest: dict


def run_stage(stage: str, func: Callable[..., T], *args, **kwargs) -> T:
    """Run one pipeline stage, tagging any failure with the stage name."""
    logger.debug("stage %s", stage)
    try:
        return func(*args, **kwargs)
    except PipelineError:
        raise
    except (LatentStartError, ValueError, ArithmeticError) as exc:
        raise PipelineError(stage, exc) from exc


def _sampling_condition(style: np.ndarray, positive: ConditionEmbedding) -> ConditionEmbedding:
    return ConditionEmbedding(extract_style(style), positive.content_slot,
                              injection=Injection.STYLE, label="style")


def _guidance(cfg: TransferConfig, positive: ConditionEmbedding,
              negative: ConditionEmbedding, style_cond: ConditionEmbedding):
    if cfg.negative_stage is NegativeStage.INVERSION:
        inversion = GuidanceConfig(GuidanceMode.NEGATIVE, omega_i=cfg.omega_i,
                                   positive=positive, negative=negative)
    else:
        inversion = GuidanceConfig(GuidanceMode.NONE, positive=positive)
    if cfg.negative_stage is NegativeStage.SAMPLING:
        sampling = GuidanceConfig(GuidanceMode.DUAL, omega_plus=cfg.cfg_omega,
                                  omega_minus=cfg.omega_i, positive=style_cond,
                                  negative=negative)
    else:
        sampling = GuidanceConfig(GuidanceMode.CFG, omega=cfg.cfg_omega, positive=style_cond)
    return inversion, sampling


def compute_metrics(
    output: np.ndarray, startpoint: np.ndarray, cfg: TransferConfig
) -> Dict[str, float]:
    spec = cfg.startpoint.filter
    return {
        "content_l2": content_l2(output, cfg.content),
        "low_band_ratio": band_ratio(startpoint, spec),
        "output_low_band_ratio": band_ratio(output, spec),
        "style_embedding_distance": style_embedding_distance(output, cfg.style),
        "leakage_distance": content_embedding_distance(output, cfg.style),
        "high_band_energy": high_band_energy(output, spec),
        "content_high_band_energy": high_band_energy(cfg.content, spec),
    }


def style_transfer(
    model: ScoreModel, schedule: NoiseSchedule, cfg: TransferConfig
) -> TransferResult:
    """
    Run every stage for one content/style pair.

    Raises:
        PipelineError: a stage failed; ``stage`` names it.
    """
    schedule = run_stage("inversion", schedule.resampled, cfg.steps)
    logger.info("transfer seed=%d steps=%d startpoint=%s negative_stage=%s",
                cfg.seed, cfg.steps, cfg.startpoint.kind.value, cfg.negative_stage.value)

    positive = cfg.positive_condition
    if positive is None:
        positive = run_stage("negative_embedding", label_embedding, cfg.content, "positive")
    negative = run_stage(
        "negative_embedding",
        lambda: build_negative_embedding(extract_style(cfg.content), extract_content(cfg.style)),
    )
    style_cond = run_stage("sampling", _sampling_condition, cfg.style, positive)
    inversion_guidance, sampling_guidance = run_stage(
        "negative_embedding", _guidance, cfg, positive, negative, style_cond
    )

    inversion = run_stage("inversion", invert, model, schedule, cfg.content, inversion_guidance)
    start = run_stage("startpoint", make_variant, inversion.final, cfg.startpoint)
    sampling = run_stage("sampling", sample, model, schedule, start, sampling_guidance)
    output = sampling.final
    metrics = run_stage("metrics", compute_metrics, output, start, cfg)

    manifest = {
        "config": cfg.to_dict(),
        "schedule": schedule.to_dict(),
        "guidance": {
            "inversion": inversion_guidance.to_dict(),
            "sampling": sampling_guidance.to_dict(),
        },
        "seeds": {"run": int(cfg.seed), "startpoint": int(cfg.startpoint.seed)},
        "metrics": metrics,
    }
    logger.info("transfer done content_l2=%.6g", metrics["content_l2"])
    return TransferResult(output, start, inversion, sampling, metrics, manifest)


def frequency_analysis(
    model: ScoreModel,
    schedule: NoiseSchedule,
    content: np.ndarray,
    alphas: Sequence[float],
    spec: Optional[FilterSpec] = None,
    positive: Optional[ConditionEmbedding] = None,
) -> List[dict]:
    """
    Reconstruct ``content`` from its inverted latent with one band attenuated.

    For every alpha and both bands the inverted latent is band-reduced and
    sampled back without guidance. Returns one record per (band, alpha) with
    the reconstruction's content_l2 and the reduced latent's low-band ratio.
    """
    spec = spec or FilterSpec()
    content = as_grid(content, "content")
    guidance = GuidanceConfig(GuidanceMode.NONE, positive=positive)
    z_T = run_stage("inversion", invert, model, schedule, content, guidance).final
    spectrum = fft2(z_T)
    mask = make_lowpass(spec, z_T.shape[0], z_T.shape[1])

    records = []
    for band in (Band.LOW, Band.HIGH):
        for alpha in alphas:
            reduced = run_stage(
                "startpoint", lambda: ifft2(reduce_band(spectrum, mask, alpha, band))
            )
            recon = run_stage("sampling", sample, model, schedule, reduced, guidance).final
            records.append({
                "band": band.value,
                "alpha": float(alpha),
                "content_l2": content_l2(recon, content),
                "low_band_ratio": band_ratio(reduced, spec),
            })
    return records
