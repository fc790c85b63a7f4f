"""
Command drivers behind the CLI.

Each driver takes a validated ``RunConfig``, writes its outputs under the
run's output directory and returns a process exit status.
"""
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, Optional, TextIO

import numpy as np

from .. import data
from ..config import Command, GridSource, RunConfig
from ..core.ddim import TrajectoryRecord, invert, sample
from ..core.guidance import GuidanceConfig, GuidanceMode, build_negative_embedding
from ..core.models import (
    ConditionalMixtureModel,
    extract_content,
    extract_style,
    label_embedding,
    load_model,
)
from ..core.pipeline import (
    NegativeStage,
    TransferConfig,
    TransferResult,
    ablate_startpoints,
    ablation_table,
    filter_sweep,
    frequency_analysis,
    guidance_sweep,
    style_transfer,
)
from ..errors import ConfigError, DiagnosticReporter, ErrorCode, LatentStartError
from ..io import ResultTable, read_grid, trajectory_table, write_grid, write_manifest
from ..types import ConditionEmbedding, Injection
from ..utils import SeededRng
from .selftest import run_selftest

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3
EXIT_SELFTEST = 4


class RunContext:
    """A validated config plus the resolved model, paths and thread count."""

    def __init__(self, cfg: RunConfig, base_dir: Optional[Path] = None, threads: int = 1,
                 out: Optional[TextIO] = None):
        self.cfg = cfg
        self.base_dir = base_dir or Path.cwd()
        self.threads = threads
        self.out = out or sys.stdout
        self.output_dir = self.resolve(cfg.output_dir)
        self._model: Optional[ConditionalMixtureModel] = None

    def resolve(self, path: str) -> Path:
        candidate = Path(path)
        return candidate if candidate.is_absolute() else self.base_dir / candidate

    @property
    def model(self) -> ConditionalMixtureModel:
        if self._model is None:
            if not self.cfg.model_file:
                raise ConfigError("config has no model_file", code=ErrorCode.FILE_NOT_FOUND,
                                  hints=["set \"model_file\" to a model document"])
            self._model = load_model(self.resolve(self.cfg.model_file), self.cfg.noise_schedule())
        return self._model

    def grid(self, source: GridSource) -> np.ndarray:
        model = self.model
        if source.file:
            path = self.resolve(source.file)
            if not path.is_file():
                raise ConfigError(f"grid file not found: {path}", code=ErrorCode.FILE_NOT_FOUND)
            grid = read_grid(path)
        elif source.pattern:
            grid = data.pattern(source.pattern, model.shape, source.seed)
        else:
            grid = data.label_draw(model, source.label, source.seed)
        if grid.shape != model.shape:
            raise ConfigError(f"grid shape {grid.shape} does not match model shape {model.shape}",
                              code=ErrorCode.CONFIG_TYPE)
        return grid

    def positive(self) -> Optional[ConditionEmbedding]:
        if self.cfg.positive_label is None:
            return None
        return self.model.embedding_of(self.cfg.positive_label)

    def transfer_config(self) -> TransferConfig:
        cfg = self.cfg
        return TransferConfig(
            content=self.grid(cfg.content),
            style=self.grid(cfg.style),
            positive_condition=self.positive(),
            omega_i=cfg.omega_i,
            cfg_omega=cfg.cfg_omega,
            startpoint=cfg.startpoint_spec(),
            steps=cfg.steps,
            seed=cfg.seed,
            negative_stage=cfg.negative_stage,
        )

    def manifest(self, extra: dict) -> dict:
        return {"command": self.cfg.command.value, "run_config": self.cfg.resolved(), **extra}

    def emit(self, text: str) -> None:
        print(text, file=self.out)


def write_trajectory(directory: Path, name: str, record: TrajectoryRecord) -> None:
    trajectory_table(record).write_csv(directory / f"{name}_trajectory.csv")


def write_transfer(ctx: RunContext, directory: Path, result: TransferResult) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    write_grid(directory / "output.sspg", result.output)
    write_grid(directory / "output.pgm", result.output)
    write_grid(directory / "startpoint.sspg", result.startpoint)
    write_trajectory(directory, "inversion", result.inversion_trajectory)
    write_trajectory(directory, "sampling", result.sampling_trajectory)
    ResultTable(["metric", "value"], sorted(result.metrics.items())).write_csv(
        directory / "metrics.csv"
    )
    write_manifest(directory / "manifest.json", ctx.manifest(result.manifest))


def cmd_invert(ctx: RunContext) -> int:
    cfg = ctx.cfg
    content = ctx.grid(cfg.content)
    positive = ctx.positive() or label_embedding(content, "positive")
    guidance = GuidanceConfig(GuidanceMode.NONE, positive=positive)
    if cfg.negative_stage is NegativeStage.INVERSION:
        style = ctx.grid(cfg.style)
        negative = build_negative_embedding(extract_style(content), extract_content(style))
        guidance = GuidanceConfig(GuidanceMode.NEGATIVE, omega_i=cfg.omega_i,
                                  positive=positive, negative=negative)
    record = invert(ctx.model, ctx.model.schedule, content, guidance)

    ctx.output_dir.mkdir(parents=True, exist_ok=True)
    write_grid(ctx.output_dir / "inversion.sspg", record.final)
    write_trajectory(ctx.output_dir, "inversion", record)
    write_manifest(ctx.output_dir / "manifest.json",
                   ctx.manifest({"guidance": guidance.to_dict()}))
    ctx.emit(f"inverted {len(record) - 1} steps -> {ctx.output_dir / 'inversion.sspg'}")
    return EXIT_OK


def cmd_sample(ctx: RunContext) -> int:
    cfg = ctx.cfg
    model = ctx.model
    if cfg.start is not None:
        start = ctx.grid(cfg.start)
    else:
        start = SeededRng(cfg.seed, "sample").normal(model.shape)
    positive = ctx.positive()
    if positive is None:
        style = ctx.grid(cfg.style)
        positive = ConditionEmbedding(extract_style(style), np.zeros(model.content_dim),
                                      injection=Injection.STYLE, label="style")
    guidance = GuidanceConfig(GuidanceMode.CFG, omega=cfg.cfg_omega, positive=positive)
    record = sample(model, model.schedule, start, guidance)

    ctx.output_dir.mkdir(parents=True, exist_ok=True)
    write_grid(ctx.output_dir / "output.sspg", record.final)
    write_grid(ctx.output_dir / "output.pgm", record.final)
    write_trajectory(ctx.output_dir, "sampling", record)
    write_manifest(ctx.output_dir / "manifest.json",
                   ctx.manifest({"guidance": guidance.to_dict()}))
    ctx.emit(f"sampled {len(record) - 1} steps -> {ctx.output_dir / 'output.sspg'}")
    return EXIT_OK


def cmd_transfer(ctx: RunContext) -> int:
    result = style_transfer(ctx.model, ctx.model.schedule, ctx.transfer_config())
    write_transfer(ctx, ctx.output_dir, result)
    ctx.emit(ResultTable(["metric", "value"], sorted(result.metrics.items())).to_text())
    return EXIT_OK


def cmd_ablate(ctx: RunContext) -> int:
    results = ablate_startpoints(ctx.model, ctx.model.schedule, ctx.transfer_config(),
                                 ctx.cfg.kinds, threads=ctx.threads)
    for kind, result in zip(ctx.cfg.kinds, results):
        write_transfer(ctx, ctx.output_dir / kind.value, result)
    table = ablation_table(results)
    table.write_csv(ctx.output_dir / "comparison.csv")
    ctx.emit(table.to_text())
    return EXIT_OK


def cmd_sweep(ctx: RunContext) -> int:
    sweep = ctx.cfg.sweep
    base = ctx.transfer_config()
    table = filter_sweep(ctx.model, ctx.model.schedule, base, sweep.sigmas, sweep.alphas,
                         threads=ctx.threads)
    table.write_csv(ctx.output_dir / "sweep.csv")
    ctx.emit(table.to_text())
    if sweep.omega_is:
        guidance = guidance_sweep(ctx.model, ctx.model.schedule, base, sweep.omega_is,
                                  threads=ctx.threads)
        guidance.write_csv(ctx.output_dir / "guidance_sweep.csv")
        ctx.emit(guidance.to_text())
    write_manifest(ctx.output_dir / "manifest.json", ctx.manifest({}))
    return EXIT_OK


def cmd_analyze(ctx: RunContext) -> int:
    records = frequency_analysis(ctx.model, ctx.model.schedule, ctx.grid(ctx.cfg.content),
                                 ctx.cfg.sweep.alphas, ctx.cfg.filter_spec(), ctx.positive())
    columns = ["band", "alpha", "content_l2", "low_band_ratio"]
    table = ResultTable(columns, [[r[c] for c in columns] for r in records])
    table.write_csv(ctx.output_dir / "frequency_analysis.csv")
    write_manifest(ctx.output_dir / "manifest.json", ctx.manifest({}))
    ctx.emit(table.to_text())
    return EXIT_OK


def cmd_selftest(ctx: RunContext) -> int:
    return EXIT_OK if run_selftest(out=ctx.out) else EXIT_SELFTEST


COMMANDS: Dict[Command, Callable[[RunContext], int]] = {
    Command.INVERT: cmd_invert,
    Command.SAMPLE: cmd_sample,
    Command.TRANSFER: cmd_transfer,
    Command.ABLATE: cmd_ablate,
    Command.SWEEP: cmd_sweep,
    Command.ANALYZE: cmd_analyze,
    Command.SELFTEST: cmd_selftest,
}


def run_command(cfg: RunConfig, base_dir: Optional[Path] = None, threads: int = 1,
                out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    """
    Execute the command named by ``cfg``.

    Returns:
        0 on success, 2 for configuration errors (including missing files),
        3 for runtime errors, 4 when the selftest fails
    """
    err = err or sys.stderr
    ctx = RunContext(cfg, base_dir, threads, out)
    reporter = DiagnosticReporter()
    logger.info("running %s (seed=%d, threads=%d)", cfg.command.value, cfg.seed, threads)
    try:
        return COMMANDS[cfg.command](ctx)
    except ConfigError as exc:
        reporter.add_exception(exc)
        status = EXIT_CONFIG
    except LatentStartError as exc:
        reporter.add_exception(exc)
        status = EXIT_RUNTIME
    except OSError as exc:
        reporter.add_error(f"{exc.strerror or exc}: {exc.filename or ''}".strip(),
                           code=ErrorCode.INTERNAL_ERROR)
        status = EXIT_RUNTIME
    for message in reporter.format_all():
        print(message, file=err)
    return status
