"""SYLF v1: a little-endian binary container for frame features.

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

from .errors import FormatError
from .frames import FrameMatrix

MAGIC = b"SYLF"
VERSION = 1
_HEADER = struct.Struct("<4sIIQddI")


def write_frames(matrix: FrameMatrix, source_name: str, path) -> None:
    """Serialize a FrameMatrix; the payload is quantized to float32."""
    name = source_name.encode("utf-8")
    header = _HEADER.pack(
        MAGIC,
        VERSION,
        matrix.dim,
        matrix.num_frames,
        matrix.hop_seconds,
        matrix.offset_seconds,
        len(name),
    )
    payload = np.ascontiguousarray(matrix.data, dtype="<f4").tobytes()
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(name)
        fh.write(payload)


def read_frames(path) -> tuple[FrameMatrix, str]:
    """Deserialize a SYLF file, returning the matrix and source name."""
    with open(path, "rb") as fh:
        raw = fh.read()

    if len(raw) < _HEADER.size:
        raise FormatError("corrupt container: truncated header")
    magic, version, dim, num_frames, hop_seconds, offset_seconds, name_len = _HEADER.unpack_from(raw, 0)
    if magic != MAGIC:
        raise FormatError("not a SYLF file: bad magic")
    if version != VERSION:
        raise FormatError(f"unsupported version: {version}")
    if dim < 1:
        raise FormatError("corrupt container: zero feature dimension")

    pos = _HEADER.size
    if len(raw) < pos + name_len:
        raise FormatError("corrupt container: truncated source name")
    try:
        source_name = raw[pos:pos + name_len].decode("utf-8")
    except UnicodeDecodeError as exc:
        raise FormatError(f"corrupt container: source name is not UTF-8 ({exc})") from exc
    pos += name_len

    expected = num_frames * dim * 4
    found = len(raw) - pos
    if found < expected:
        raise FormatError(f"truncated payload: expected {expected} bytes, found {found}")
    data = np.frombuffer(raw, dtype="<f4", count=num_frames * dim, offset=pos)
    matrix = FrameMatrix(
        data=data.reshape(num_frames, dim),
        hop_seconds=hop_seconds,
        offset_seconds=offset_seconds,
    )
    return matrix, source_name
