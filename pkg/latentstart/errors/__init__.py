"""
Error handling for the latentstart toolkit.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


class ErrorLevel:
    """Diagnostic severity levels."""
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


class ErrorCode:
    """Standard error codes for latentstart."""
    # Grid / fourier errors (1000-1999)
    NON_FINITE = 1001
    SHAPE_MISMATCH = 1002
    GRID_TOO_SMALL = 1003
    IMAGINARY_RESIDUE = 1004
    INVALID_FILTER = 1005
    INVALID_ALPHA = 1006

    # Schedule errors (2000-2999)
    INVALID_SCHEDULE = 2001
    STEP_OUT_OF_RANGE = 2002

    # Model errors (3000-3999)
    EMPTY_REGISTRY = 3001
    INVALID_COMPONENT = 3002
    INVALID_EMBEDDING = 3003
    MODEL_DOCUMENT = 3004

    # Guidance / sampling errors (4000-4999)
    INVALID_GUIDANCE = 4001
    ALPHA_BAR_ORDER = 4002
    UNKNOWN_STARTPOINT = 4003
    INVALID_STARTPOINT = 4004
    INVALID_METRIC_INPUT = 4005
    NOT_PSD = 4006

    # Config / io errors (5000-5999)
    CONFIG_PARSE = 5001
    CONFIG_UNKNOWN_KEY = 5002
    CONFIG_TYPE = 5003
    FILE_NOT_FOUND = 5004
    GRID_FORMAT = 5005

    # Pipeline errors (6000-6999)
    STAGE_FAILED = 6001

    # Internal errors (9000-9999)
    INTERNAL_ERROR = 9001


@dataclass
class Diagnostic:
    """A single reportable message, produced from an error or a selftest check."""
    code: int
    message: str
    level: str = ErrorLevel.ERROR
    stage: Optional[str] = None
    hints: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        """Convert the diagnostic to a dictionary."""
        return {
            "code": self.code,
            "message": self.message,
            "level": self.level,
            "stage": self.stage,
            "hints": list(self.hints),
        }

    def format(self) -> str:
        """Format as a single block of text for terminal output."""
        head = f"{self.level}[E{self.code}]"
        if self.stage:
            head += f" ({self.stage})"
        lines = [f"{head}: {self.message}"]
        lines.extend(f"  hint: {hint}" for hint in self.hints)
        return "\n".join(lines)


class LatentStartError(Exception):
    """Base class for all latentstart errors."""

    default_code = ErrorCode.INTERNAL_ERROR

    def __init__(
        self,
        message: str,
        code: Optional[int] = None,
        stage: Optional[str] = None,
        hints: Optional[List[str]] = None,
    ):
        self.message = message
        self.code = code if code is not None else self.default_code
        self.stage = stage
        self.hints = hints or []
        super().__init__(self.message)

    def __str__(self) -> str:
        if self.stage:
            return f"[{type(self).__name__}] {self.stage}: {self.message}"
        return f"[{type(self).__name__}] {self.message}"

    def to_diagnostic(self) -> Diagnostic:
        """Convert the error into a reportable diagnostic."""
        return Diagnostic(
            code=self.code,
            message=self.message,
            level=ErrorLevel.ERROR,
            stage=self.stage,
            hints=list(self.hints),
        )


class ShapeError(LatentStartError):
    """Raised when grid shapes disagree or a grid is malformed."""
    default_code = ErrorCode.SHAPE_MISMATCH


class FourierError(LatentStartError):
    """Raised by the frequency-domain transforms."""
    default_code = ErrorCode.IMAGINARY_RESIDUE


class FilterError(LatentStartError):
    """Raised for invalid filter specifications or band parameters."""
    default_code = ErrorCode.INVALID_FILTER


class ScheduleError(LatentStartError):
    """Raised for invalid noise schedules or step indices."""
    default_code = ErrorCode.INVALID_SCHEDULE


class ModelError(LatentStartError):
    """Raised by score models and their registries."""
    default_code = ErrorCode.INVALID_COMPONENT


class GuidanceError(LatentStartError):
    """Raised for invalid guidance configurations or combinator inputs."""
    default_code = ErrorCode.INVALID_GUIDANCE


class DDIMError(LatentStartError):
    """Raised when DDIM step coefficients are out of order."""
    default_code = ErrorCode.ALPHA_BAR_ORDER


class StartpointError(LatentStartError):
    """Raised for invalid startpoint specifications."""
    default_code = ErrorCode.INVALID_STARTPOINT


class MetricsError(LatentStartError):
    """Raised for invalid metric inputs."""
    default_code = ErrorCode.INVALID_METRIC_INPUT


class ConfigError(LatentStartError):
    """Raised when a run-config or model document is invalid."""
    default_code = ErrorCode.CONFIG_PARSE


class GridFormatError(LatentStartError):
    """Raised when a grid file cannot be decoded."""
    default_code = ErrorCode.GRID_FORMAT


class PipelineError(LatentStartError):
    """Raised when a pipeline stage fails; always carries the stage name."""
    default_code = ErrorCode.STAGE_FAILED

    def __init__(self, stage: str, cause: Exception):
        self.cause = cause
        code = getattr(cause, "code", ErrorCode.STAGE_FAILED)
        hints = list(getattr(cause, "hints", []))
        message = getattr(cause, "message", str(cause))
        super().__init__(message, code=code, stage=stage, hints=hints)


def config_error_from_validation(exc: Exception, what: str = "config") -> ConfigError:
    """
    Translate a pydantic ``ValidationError`` into a ConfigError.

    The first failure decides the code: ``extra_forbidden`` maps to
    CONFIG_UNKNOWN_KEY, everything else to CONFIG_TYPE.
    """
    details = exc.errors() if hasattr(exc, "errors") else []
    if not details:
        return ConfigError(f"invalid {what}: {exc}", code=ErrorCode.CONFIG_TYPE)

    first = details[0]
    location = ".".join(str(part) for part in first.get("loc", ())) or "<root>"
    if first.get("type") == "extra_forbidden":
        code = ErrorCode.CONFIG_UNKNOWN_KEY
        message = f"unknown key '{location}' in {what}"
    else:
        code = ErrorCode.CONFIG_TYPE
        message = f"invalid value for '{location}' in {what}: {first.get('msg', 'invalid')}"
    hints = [
        f"{'.'.join(str(p) for p in d.get('loc', ()))}: {d.get('msg', '')}" for d in details[1:]
    ]
    return ConfigError(message, code=code, hints=hints)


class DiagnosticReporter:
    """Collects diagnostics during a selftest or a CLI run."""

    def __init__(self):
        self.errors: List[Diagnostic] = []
        self.warnings: List[Diagnostic] = []
        self.infos: List[Diagnostic] = []

    def add(self, diagnostic: Diagnostic) -> None:
        """Route a diagnostic to the list for its level."""
        if diagnostic.level == ErrorLevel.ERROR:
            self.errors.append(diagnostic)
        elif diagnostic.level == ErrorLevel.WARNING:
            self.warnings.append(diagnostic)
        else:
            self.infos.append(diagnostic)

    def add_error(
        self,
        message: str,
        code: int = ErrorCode.INTERNAL_ERROR,
        stage: Optional[str] = None,
        hints: Optional[List[str]] = None,
    ) -> None:
        """Add an error to the reporter."""
        self.add(Diagnostic(code=code, message=message, stage=stage, hints=hints or []))

    def add_exception(self, error: Exception, stage: Optional[str] = None) -> None:
        """Record an exception, keeping its code when it is one of ours."""
        if isinstance(error, LatentStartError):
            diagnostic = error.to_diagnostic()
            if stage and not diagnostic.stage:
                diagnostic.stage = stage
            self.add(diagnostic)
        else:
            self.add_error(f"{type(error).__name__}: {error}", stage=stage)

    def add_info(self, message: str, stage: Optional[str] = None) -> None:
        """Add an info message to the reporter."""
        self.add(Diagnostic(code=0, message=message, level=ErrorLevel.INFO, stage=stage))

    def has_errors(self) -> bool:
        """Check if there are any errors."""
        return len(self.errors) > 0

    def get_all_messages(self) -> List[Diagnostic]:
        """Get all messages in order of severity (errors, then warnings, then infos)."""
        return self.errors + self.warnings + self.infos

    def format_all(self) -> List[str]:
        """Format all messages."""
        return [msg.format() for msg in self.get_all_messages()]

    def clear(self) -> None:
        """Clear all messages."""
        self.errors.clear()
        self.warnings.clear()
        self.infos.clear()
