"""
Style-transfer orchestration and the ablation drivers.
"""
from .experiments import (
    ablate_startpoints,
    ablation_table,
    filter_sweep,
    frequency_ablation,
    guidance_sweep,
    negative_mode_sweep,
    run_parallel,
)
from .transfer import (
    STAGES,
    NegativeStage,
    TransferConfig,
    TransferResult,
    compute_metrics,
    frequency_analysis,
    run_stage,
    style_transfer,
)

__all__ = [
    "TransferConfig",
    "TransferResult",
    "NegativeStage",
    "STAGES",
    "style_transfer",
    "frequency_analysis",
    "compute_metrics",
    "run_stage",
    "ablate_startpoints",
    "ablation_table",
    "filter_sweep",
    "guidance_sweep",
    "negative_mode_sweep",
    "frequency_ablation",
    "run_parallel",
]
