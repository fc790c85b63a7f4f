"""
Grid file formats.

raw (``.sspg``)
    ``b"SSPG"``, then H, W, C as little-endian uint32, then H*W*C little-endian
    float64 values, channel-planar and row-major inside each channel.
    Lossless.

P5 (``.pgm``)
    16-bit big-endian portable graymap, one file per channel. A header
    comment ``# min=<lo> max=<hi>`` records the affine map from [lo, hi] to
    [0, 65535]. Multi-channel grids are written as ``<stem>_c<i>.pgm``.
"""
import re
import struct
import sys
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..errors import ErrorCode, GridFormatError
from ..types import as_grid

PathLike = Union[str, Path]

RAW_MAGIC = b"SSPG"
RAW_SUFFIXES = (".sspg", ".raw")
PGM_SUFFIX = ".pgm"
PGM_MAX = 65535
_HEADER = struct.Struct("<4sIII")
_RANGE_COMMENT = re.compile(rb"#\s*min=(\S+)\s+max=(\S+)")


def encode_raw(grid: np.ndarray) -> bytes:
    grid = as_grid(grid)
    h, w, c = grid.shape
    planar = np.ascontiguousarray(grid.transpose(2, 0, 1), dtype="<f8")
    return _HEADER.pack(RAW_MAGIC, h, w, c) + planar.tobytes()


def decode_raw(payload: bytes) -> np.ndarray:
    """
    Raises:
        GridFormatError: bad magic, truncated data, trailing bytes or
            dimensions whose byte size overflows.
    """
    if len(payload) < _HEADER.size:
        raise GridFormatError(
            f"raw grid truncated: {len(payload)} bytes, header needs {_HEADER.size}"
        )
    magic, h, w, c = _HEADER.unpack_from(payload)
    if magic != RAW_MAGIC:
        raise GridFormatError(f"bad magic {magic!r}, expected {RAW_MAGIC!r}")
    if min(h, w, c) == 0:
        raise GridFormatError(f"raw grid has an empty dimension: {h}x{w}x{c}")
    expected = h * w * c * 8
    if expected > sys.maxsize:
        raise GridFormatError(f"raw grid dimensions {h}x{w}x{c} overflow")
    body = payload[_HEADER.size:]
    if len(body) < expected:
        raise GridFormatError(f"raw grid truncated: {len(body)} of {expected} data bytes")
    if len(body) > expected:
        raise GridFormatError(f"raw grid has {len(body) - expected} trailing bytes")
    planar = np.frombuffer(body, dtype="<f8").reshape(c, h, w)
    return as_grid(planar.transpose(1, 2, 0).astype(np.float64))


def quantize(channel: np.ndarray) -> Tuple[np.ndarray, float, float]:
    """Map a 2D plane onto uint16 codes; returns ``(codes, lo, hi)``."""
    lo = float(channel.min())
    hi = float(channel.max())
    if hi == lo:
        return np.zeros(channel.shape, dtype=np.uint16), lo, hi
    codes = np.rint((channel - lo) / (hi - lo) * PGM_MAX)
    return np.clip(codes, 0, PGM_MAX).astype(np.uint16), lo, hi


def dequantize(codes: np.ndarray, lo: float, hi: float) -> np.ndarray:
    return lo + codes.astype(np.float64) / PGM_MAX * (hi - lo)


def encode_pgm(channel: np.ndarray) -> bytes:
    codes, lo, hi = quantize(np.asarray(channel, dtype=np.float64))
    h, w = codes.shape
    header = f"P5\n# min={lo!r} max={hi!r}\n{w} {h}\n{PGM_MAX}\n".encode("ascii")
    return header + codes.astype(">u2").tobytes()


def decode_pgm(payload: bytes, dequantized: bool = True) -> np.ndarray:
    """
    Decode one P5 file into a 2D plane (or its raw codes).

    Raises:
        GridFormatError: not a 16-bit P5 file, missing range comment or
            truncated pixel data.
    """
    tokens: List[bytes] = []
    lo = hi = None
    pos = 0
    while len(tokens) < 4:
        while pos < len(payload) and payload[pos:pos + 1].isspace():
            pos += 1
        if pos >= len(payload):
            raise GridFormatError("P5 header truncated")
        if payload[pos:pos + 1] == b"#":
            end = payload.find(b"\n", pos)
            if end < 0:
                raise GridFormatError("P5 header truncated")
            match = _RANGE_COMMENT.match(payload[pos:end])
            if match:
                lo, hi = float(match.group(1)), float(match.group(2))
            pos = end + 1
            continue
        end = pos
        while end < len(payload) and not payload[end:end + 1].isspace():
            end += 1
        tokens.append(payload[pos:end])
        pos = end
    pos += 1  # single whitespace byte before the raster

    if tokens[0] != b"P5":
        raise GridFormatError(f"bad magic {tokens[0]!r}, expected b'P5'")
    try:
        w, h, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    except ValueError as exc:
        raise GridFormatError(f"P5 header has non-integer fields: {tokens[1:]}") from exc
    if maxval != PGM_MAX:
        raise GridFormatError(f"only 16-bit P5 files are supported, maxval={maxval}")
    if lo is None:
        raise GridFormatError("P5 file lacks the '# min= max=' range comment")
    expected = w * h * 2
    raster = payload[pos:pos + expected]
    if len(raster) < expected:
        raise GridFormatError(f"P5 raster truncated: {len(raster)} of {expected} bytes")
    codes = np.frombuffer(raster, dtype=">u2").reshape(h, w).astype(np.uint16)
    return dequantize(codes, lo, hi) if dequantized else codes


def channel_paths(path: PathLike, channels: int) -> List[Path]:
    """File names a ``channels``-channel grid is written to in P5 form."""
    path = Path(path)
    if channels == 1:
        return [path]
    return [path.with_name(f"{path.stem}_c{i}{PGM_SUFFIX}") for i in range(channels)]


def write_grid(path: PathLike, grid: np.ndarray) -> List[Path]:
    """
    Write ``grid`` in the format selected by the suffix of ``path``.

    Returns:
        The files written (several for multi-channel P5)
    """
    path = Path(path)
    grid = as_grid(grid)
    suffix = path.suffix.lower()
    if suffix in RAW_SUFFIXES:
        path.write_bytes(encode_raw(grid))
        return [path]
    if suffix == PGM_SUFFIX:
        targets = channel_paths(path, grid.shape[2])
        for i, target in enumerate(targets):
            target.write_bytes(encode_pgm(grid[:, :, i]))
        return targets
    raise GridFormatError(f"unknown grid file suffix {path.suffix!r}",
                          hints=["use .sspg for raw grids or .pgm for graymaps"])


def read_grid(path: Union[PathLike, Sequence[PathLike]]) -> np.ndarray:
    """
    Read a raw grid, a single P5 file, or a list of per-channel P5 files.

    Raises:
        GridFormatError: the file cannot be decoded.
    """
    if isinstance(path, (list, tuple)):
        planes = [decode_pgm(_read(Path(p))) for p in path]
        return as_grid(np.stack(planes, axis=2))
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == PGM_SUFFIX:
        return as_grid(decode_pgm(_read(path)))
    if suffix in RAW_SUFFIXES:
        return decode_raw(_read(path))
    raise GridFormatError(f"unknown grid file suffix {path.suffix!r}")


def _read(path: Path) -> bytes:
    if not path.is_file():
        raise GridFormatError(f"grid file not found: {path}", code=ErrorCode.FILE_NOT_FOUND)
    return path.read_bytes()
