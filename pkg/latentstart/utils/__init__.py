"""
Utility functions for the latentstart toolkit.
"""
import logging
import os
from typing import Any, Optional, Sequence

from .rng import SeededRng, stream_key

__all__ = [
    "SeededRng",
    "stream_key",
    "format_table",
    "resolve_threads",
    "THREADS_ENV",
]

logger = logging.getLogger(__name__)

THREADS_ENV = "SSP_THREADS"


def format_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """
    Render rows as a fixed-width text table with ``=`` rules.

    Args:
        headers: Column titles
        rows: Cell values, converted with ``str``

    Returns:
        The table as a single string (no trailing newline)
    """
    cells = [[str(h) for h in headers]] + [[str(x) for x in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]

    header = "  ".join(h.ljust(w) for h, w in zip(cells[0], widths))
    rule = "=" * len(header)
    lines = [rule, header, rule]
    for row in cells[1:]:
        lines.append("  ".join(x.ljust(w) for x, w in zip(row, widths)))
    lines.append(rule)
    return "\n".join(lines)


def resolve_threads(flag: Optional[int], configured: int = 1) -> int:
    """
    Thread count from the CLI flag, else ``SSP_THREADS``, else the config value.

    A value of ``SSP_THREADS`` that is not an integer is logged and skipped.
    """
    if flag is not None:
        return max(1, int(flag))
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            logger.warning("ignoring %s=%r: not an integer, using %d thread(s)",
                           THREADS_ENV, env, max(1, int(configured)))
    return max(1, int(configured))
