"""
Grid files, result tables and run manifests.
"""
from .grids import (
    channel_paths,
    decode_pgm,
    decode_raw,
    encode_pgm,
    encode_raw,
    quantize,
    read_grid,
    write_grid,
)
from .reports import ResultTable, dump_manifest, trajectory_table, write_manifest

__all__ = [
    "encode_raw",
    "decode_raw",
    "encode_pgm",
    "decode_pgm",
    "quantize",
    "channel_paths",
    "read_grid",
    "write_grid",
    "ResultTable",
    "trajectory_table",
    "dump_manifest",
    "write_manifest",
]
