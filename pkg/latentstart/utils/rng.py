"""
Seeded random streams.

Every stochastic term in the toolkit draws from a ``SeededRng``: a PCG64
generator whose state is derived from ``(seed, stream)``. Stream labels are
hashed into the seed sequence's spawn key, so the same pair always yields the
same sequence and different labels yield independent sequences.
"""
import hashlib
from typing import Optional, Tuple, Union

import numpy as np

SEED_LIMIT = 2 ** 64


def stream_key(stream: str) -> int:
    """Stable 64-bit integer for a stream label."""
    digest = hashlib.sha256(stream.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


class SeededRng:
    """PCG64 stream for one purpose (``noise``, ``variant``, ``sweep``, ...)."""

    def __init__(self, seed: int, stream: str = "default"):
        seed = int(seed)
        if not (0 <= seed < SEED_LIMIT):
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = seed
        self.stream = stream
        sequence = np.random.SeedSequence(entropy=seed, spawn_key=(stream_key(stream),))
        self.generator = np.random.Generator(np.random.PCG64(sequence))

    def child(self, label: Union[str, int]) -> "SeededRng":
        """A derived stream, e.g. one per run of a sweep."""
        return SeededRng(self.seed, f"{self.stream}/{label}")

    def normal(self, shape: Tuple[int, ...], scale: float = 1.0) -> np.ndarray:
        return self.generator.normal(0.0, scale, size=shape)

    def uniform(
        self, low: float, high: float, shape: Optional[Tuple[int, ...]] = None
    ) -> Union[float, np.ndarray]:
        return self.generator.uniform(low, high, size=shape)

    def raw(self, count: int) -> np.ndarray:
        """``count`` raw 64-bit outputs, for stream independence checks."""
        return self.generator.bit_generator.random_raw(count)

    def __repr__(self) -> str:
        return f"SeededRng(seed={self.seed}, stream={self.stream!r})"
