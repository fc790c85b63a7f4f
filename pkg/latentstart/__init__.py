"""
latentstart - DDIM startpoint enhancement for style transfer, verified on
analytic score models.
"""

__version__ = "0.1.0"

from .core.ddim import invert, sample
from .core.pipeline import TransferConfig, style_transfer
from .core.schedule import build_schedule
from .errors import LatentStartError

__all__ = [
    "__version__",
    "build_schedule",
    "invert",
    "sample",
    "TransferConfig",
    "style_transfer",
    "LatentStartError",
]
