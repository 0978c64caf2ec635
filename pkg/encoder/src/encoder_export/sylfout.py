"""SYLF v1 writer.

Layout, all fields little-endian:

    offset  size  field
    0       4     magic "SYLF"
    4       4     u32 version (1)
    8       4     u32 dim
    12      8     u64 num_frames
    20      8     f64 hop_seconds
    28      8     f64 offset_seconds
    36      4     u32 source_name_len (bytes)
    40      var   UTF-8 source name
    then    var   float32 payload, row-major (num_frames, dim)
"""

from __future__ import annotations

import struct

import numpy as np

MAGIC = b"SYLF"
VERSION = 1
_HEADER = struct.Struct("<4sIIQddI")


def write_frames(data: np.ndarray, hop_seconds: float, offset_seconds: float,
                 source_name: str, path) -> None:
    """Serialize a (num_frames, dim) array; payload quantized to float32."""
    arr = np.ascontiguousarray(data, dtype="<f4")
    if arr.ndim != 2:
        raise ValueError(f"frame data must be 2-D, got shape {arr.shape}")
    name = source_name.encode("utf-8")
    header = _HEADER.pack(MAGIC, VERSION, arr.shape[1], arr.shape[0],
                          hop_seconds, offset_seconds, len(name))
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(name)
        fh.write(arr.tobytes())
