"""
Ablation and sweep drivers, most of them built on ``style_transfer``.

Runs are independent; with ``threads > 1`` they execute on a thread pool and
results come back in input order.
"""
import logging
from dataclasses import replace
from multiprocessing.pool import ThreadPool
from typing import Callable, Dict, List, Sequence, Tuple, TypeVar, Union

import numpy as np

from ...errors import ErrorCode, StartpointError
from ...types import FilterSpec, as_grid
from ...io import ResultTable
from ..ddim import invert, sample
from ..guidance import GuidanceConfig, GuidanceMode
from ..metrics import pearson
from ..models import ConditionalMixtureModel, ScoreModel
from ..schedule import NoiseSchedule
from ..startpoint import StartpointKind, parse_kind
from .transfer import TransferConfig, TransferResult, run_stage, style_transfer

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

SWEEP_COLUMNS = ["sigma", "alpha", "content_l2", "low_band_ratio", "style_embedding_distance"]
ABLATION_COLUMNS = ["kind", "content_l2", "low_band_ratio", "style_embedding_distance",
                    "leakage_distance"]
GUIDANCE_COLUMNS = ["omega_i", "content_l2", "style_embedding_distance", "leakage_distance"]
NEGATIVE_MODE_COLUMNS = ["omega_i", "negative_distance", "positive_distance"]


def run_parallel(func: Callable[[T], R], items: Sequence[T], threads: int = 1) -> List[R]:
    """Apply ``func`` to every item; output order follows input order."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPool(min(threads, len(items))) as pool:
        return pool.map(func, items)


def ablate_startpoints(
    model: ScoreModel,
    schedule: NoiseSchedule,
    base_cfg: TransferConfig,
    kinds: Sequence[Union[str, StartpointKind]],
    threads: int = 1,
) -> List[TransferResult]:
    """One transfer per startpoint kind, everything else (seed included) shared."""
    kinds = [parse_kind(k) for k in kinds]
    if not kinds:
        raise StartpointError("ablation needs at least one startpoint kind",
                              code=ErrorCode.UNKNOWN_STARTPOINT)
    logger.info("ablating %d startpoint kinds", len(kinds))
    configs = [base_cfg.with_startpoint(kind=kind) for kind in kinds]
    return run_parallel(lambda cfg: style_transfer(model, schedule, cfg), configs, threads)


def ablation_table(results: Sequence[TransferResult]) -> ResultTable:
    """Comparison table with one row per ablation run."""
    table = ResultTable(ABLATION_COLUMNS)
    for result in results:
        m = result.metrics
        table.add_row([result.manifest["config"]["startpoint"]["kind"], m["content_l2"],
                       m["low_band_ratio"], m["style_embedding_distance"], m["leakage_distance"]])
    return table


def filter_sweep(
    model: ScoreModel,
    schedule: NoiseSchedule,
    base_cfg: TransferConfig,
    sigmas: Sequence[float],
    alphas: Sequence[float],
    threads: int = 1,
) -> ResultTable:
    """Cross product of filter sigmas and attenuation factors, sigma-major."""
    if not sigmas or not alphas:
        raise StartpointError("filter sweep needs at least one sigma and one alpha")
    cells: List[Tuple[float, float]] = [(float(s), float(a)) for s in sigmas for a in alphas]
    base_filter = base_cfg.startpoint.filter

    def run(cell: Tuple[float, float]) -> TransferResult:
        sigma, alpha = cell
        spec = FilterSpec(base_filter.kind, sigma, base_filter.cutoff, base_filter.order)
        cfg = base_cfg.with_startpoint(kind=StartpointKind.FREQ_MANIPULATED, filter=spec,
                                       alpha=alpha)
        return style_transfer(model, schedule, cfg)

    logger.info("filter sweep over %d cells", len(cells))
    results = run_parallel(run, cells, threads)
    table = ResultTable(SWEEP_COLUMNS)
    for (sigma, alpha), result in zip(cells, results):
        m = result.metrics
        table.add_row([sigma, alpha, m["content_l2"], m["low_band_ratio"],
                       m["style_embedding_distance"]])
    return table


def guidance_sweep(
    model: ScoreModel,
    schedule: NoiseSchedule,
    base_cfg: TransferConfig,
    omega_is: Sequence[float],
    threads: int = 1,
) -> ResultTable:
    """One transfer per negative guidance scale."""
    if not omega_is:
        raise StartpointError("guidance sweep needs at least one omega_i")
    configs = [replace(base_cfg, omega_i=float(w)) for w in omega_is]
    results = run_parallel(lambda cfg: style_transfer(model, schedule, cfg), configs, threads)
    table = ResultTable(GUIDANCE_COLUMNS)
    for cfg, result in zip(configs, results):
        m = result.metrics
        table.add_row([cfg.omega_i, m["content_l2"], m["style_embedding_distance"],
                       m["leakage_distance"]])
    return table


def negative_mode_sweep(
    model: ConditionalMixtureModel,
    schedule: NoiseSchedule,
    contents: Sequence[np.ndarray],
    positive_label: str,
    negative_label: str,
    omega_is: Sequence[float],
    threads: int = 1,
) -> ResultTable:
    """
    Mean distance of reconstructions to both label modes, per negative guidance scale.

    Each content is inverted with negative guidance (positive label against
    negative label) and sampled back under the positive label. A mode is the
    prototype of its label's mixture; distances are L2 and averaged over
    ``contents``.
    """
    if not omega_is:
        raise StartpointError("negative mode sweep needs at least one omega_i")
    if not contents:
        raise StartpointError("negative mode sweep needs at least one content")
    positive = model.embedding_of(positive_label)
    negative = model.embedding_of(negative_label)
    modes = {name: model.labels[model.label_names.index(name)].mixture.prototype()
             for name in (positive_label, negative_label)}
    sampling = GuidanceConfig(positive=positive)

    def run(cell: Tuple[float, np.ndarray]) -> np.ndarray:
        omega_i, content = cell
        inversion = GuidanceConfig(GuidanceMode.NEGATIVE, omega_i=omega_i,
                                   positive=positive, negative=negative)
        z_T = run_stage("inversion", invert, model, schedule, content, inversion).final
        return run_stage("sampling", sample, model, schedule, z_T, sampling).final

    contents = [as_grid(c, "content") for c in contents]
    cells = [(float(w), c) for w in omega_is for c in contents]
    logger.info("negative mode sweep: %d scales x %d contents", len(omega_is), len(contents))
    outputs = run_parallel(run, cells, threads)

    table = ResultTable(NEGATIVE_MODE_COLUMNS)
    n = len(contents)
    for i, omega_i in enumerate(omega_is):
        batch = outputs[i * n:(i + 1) * n]
        table.add_row([
            float(omega_i),
            float(np.mean([np.linalg.norm(out - modes[negative_label]) for out in batch])),
            float(np.mean([np.linalg.norm(out - modes[positive_label]) for out in batch])),
        ])
    return table


def frequency_ablation(
    model: ScoreModel,
    schedule: NoiseSchedule,
    base_cfg: TransferConfig,
    pairs: Sequence[Tuple[np.ndarray, np.ndarray]],
    threads: int = 1,
) -> Dict[str, object]:
    """
    Correlation of output and content high-band energy with FM on and off.

    "on" uses ``base_cfg.startpoint``; "off" replaces it with the plain
    inversion startpoint. Returns ``r_on``, ``r_off`` and a per-pair table.
    """
    if len(pairs) < 2:
        raise StartpointError("frequency ablation needs at least two pairs")
    on = [replace(base_cfg, content=c, style=s) for c, s in pairs]
    off = [cfg.with_startpoint(kind=StartpointKind.INVERSION) for cfg in on]
    results = run_parallel(lambda cfg: style_transfer(model, schedule, cfg), on + off, threads)
    results_on, results_off = results[:len(on)], results[len(on):]

    content_energy = [r.metrics["content_high_band_energy"] for r in results_on]
    energy_on = [r.metrics["high_band_energy"] for r in results_on]
    energy_off = [r.metrics["high_band_energy"] for r in results_off]
    table = ResultTable(["pair", "content_high_band_energy", "high_band_energy_on",
                         "high_band_energy_off"])
    for i, row in enumerate(zip(content_energy, energy_on, energy_off)):
        table.add_row([i, *row])
    r_on = pearson(energy_on, content_energy)
    r_off = pearson(energy_off, content_energy)
    logger.info("frequency ablation r_on=%.4f r_off=%.4f", r_on, r_off)
    return {"r_on": r_on, "r_off": r_off, "table": table}
