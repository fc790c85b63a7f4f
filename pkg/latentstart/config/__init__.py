"""
Run-configuration document.

The document is JSON validated by pydantic models that reject unknown keys.
Defaults follow the reference operating point: 50 steps, omega_i 1.5,
CFG 5.0, frequency-manipulated startpoint with alpha 0.7 and a gaussian
filter of sigma 0.3.
"""
import json
from enum import Enum
from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..core.pipeline import NegativeStage
from ..core.schedule import (
    DEFAULT_BETA_END,
    DEFAULT_BETA_START,
    DEFAULT_T_TRAIN,
    NoiseSchedule,
    build_schedule,
)
from ..core.startpoint import StartpointKind, StartpointSpec
from ..errors import ConfigError, ErrorCode, config_error_from_validation
from ..types import FilterKind, FilterSpec
from ..utils.rng import SEED_LIMIT


class Command(str, Enum):
    INVERT = "invert"
    SAMPLE = "sample"
    TRANSFER = "transfer"
    ABLATE = "ablate"
    SWEEP = "sweep"
    ANALYZE = "analyze"
    SELFTEST = "selftest"


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", use_enum_values=False)


class ScheduleConfig(_Strict):
    t_train: int = Field(default=DEFAULT_T_TRAIN, ge=1)
    beta_start: float = Field(default=DEFAULT_BETA_START, gt=0, lt=1)
    beta_end: float = Field(default=DEFAULT_BETA_END, gt=0, lt=1)


class FilterConfig(_Strict):
    kind: FilterKind = FilterKind.GAUSSIAN
    sigma: float = Field(default=0.3, gt=0)
    cutoff: float = Field(default=0.5, gt=0, le=1)
    order: int = Field(default=2, ge=1)


class StartpointConfig(_Strict):
    kind: StartpointKind = StartpointKind.FREQ_MANIPULATED
    alpha: float = Field(default=0.7, ge=0, le=1)
    noise_sigma: float = Field(default=1.0, ge=0)
    filter: FilterConfig = Field(default_factory=FilterConfig)
    per_bin_scale: bool = False
    shared_shift: bool = False


class GridSource(_Strict):
    """Exactly one of ``file``, ``pattern`` or ``label``."""
    file: Optional[str] = None
    pattern: Optional[str] = None
    label: Optional[str] = None
    seed: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _one_source(self):
        chosen = [name for name in ("file", "pattern", "label") if getattr(self, name)]
        if len(chosen) != 1:
            raise ValueError("give exactly one of 'file', 'pattern' or 'label'")
        return self


class SweepConfig(_Strict):
    sigmas: List[float] = Field(default_factory=lambda: [0.1, 0.3, 0.5, 0.9], min_length=1)
    alphas: List[float] = Field(default_factory=lambda: [0.5, 0.7, 0.9, 1.0], min_length=1)
    omega_is: Optional[List[float]] = None


def _all_kinds() -> List[StartpointKind]:
    return list(StartpointKind)


class RunConfig(_Strict):
    command: Optional[Command] = None
    model_file: Optional[str] = None
    schedule: ScheduleConfig = Field(default_factory=ScheduleConfig)
    steps: int = Field(default=50, ge=1)
    omega_i: float = Field(default=1.5, ge=0)
    cfg_omega: float = Field(default=5.0, ge=0)
    negative_stage: NegativeStage = NegativeStage.INVERSION
    startpoint: StartpointConfig = Field(default_factory=StartpointConfig)
    content: GridSource = Field(default_factory=lambda: GridSource(pattern="stripes"))
    style: GridSource = Field(default_factory=lambda: GridSource(pattern="checkerboard"))
    start: Optional[GridSource] = None
    positive_label: Optional[str] = None
    kinds: List[StartpointKind] = Field(default_factory=_all_kinds, min_length=1)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    output_dir: str = "runs"
    seed: int = Field(default=0, ge=0, lt=SEED_LIMIT)
    threads: int = Field(default=1, ge=1)

    def filter_spec(self) -> FilterSpec:
        f = self.startpoint.filter
        return FilterSpec(f.kind, f.sigma, f.cutoff, f.order)

    def startpoint_spec(self) -> StartpointSpec:
        s = self.startpoint
        return StartpointSpec(s.kind, s.alpha, s.noise_sigma, self.filter_spec(), self.seed,
                              s.per_bin_scale, s.shared_shift)

    def noise_schedule(self) -> NoiseSchedule:
        """Schedule with ``steps`` sampled steps."""
        s = self.schedule
        return build_schedule(s.t_train, self.steps, s.beta_start, s.beta_end)

    def resolved(self) -> dict:
        """Every setting, defaults filled, for manifests."""
        return self.model_dump(mode="json")


def parse_config(text: Union[str, bytes], command: Optional[str] = None) -> RunConfig:
    """
    Parse and validate a run-config document.

    ``command`` overrides the document's command.

    Raises:
        ConfigError: malformed JSON (CONFIG_PARSE, with line and column),
            unknown keys (CONFIG_UNKNOWN_KEY), wrong types or values or a
            missing command (CONFIG_TYPE).
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        payload = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"config is not valid JSON: {exc.msg} at line {exc.lineno}, column {exc.colno}",
            code=ErrorCode.CONFIG_PARSE,
        ) from exc
    if not isinstance(payload, dict):
        raise ConfigError("config document must be a JSON object", code=ErrorCode.CONFIG_TYPE)
    if command is not None:
        payload["command"] = command
    try:
        config = RunConfig.model_validate(payload)
    except ValidationError as exc:
        raise config_error_from_validation(exc, "config") from exc
    if config.command is None:
        raise ConfigError(
            "config has no command",
            code=ErrorCode.CONFIG_TYPE,
            hints=[f"set \"command\" to one of: {', '.join(c.value for c in Command)}"],
        )
    return config


def load_config(path: Union[str, Path], command: Optional[str] = None) -> RunConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}", code=ErrorCode.FILE_NOT_FOUND)
    return parse_config(path.read_text(encoding="utf-8"), command)


__all__ = [
    "Command",
    "RunConfig",
    "ScheduleConfig",
    "FilterConfig",
    "StartpointConfig",
    "GridSource",
    "SweepConfig",
    "parse_config",
    "load_config",
]
