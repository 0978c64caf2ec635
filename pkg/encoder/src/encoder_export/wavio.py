"""Minimal RIFF/WAVE reader for exporter inputs.

Supports the encodings a preprocessed corpus actually contains:
mono PCM 16-bit (tag 1) and mono IEEE float32 (tag 3). Anything else
is rejected rather than guessed at.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import FormatError, ValidationError


def read_wav(path) -> tuple[np.ndarray, int]:
    """Read a mono WAV file, returning (float32 samples in [-1, 1], rate)."""
    with open(path, "rb") as fh:
        raw = fh.read()

    if len(raw) < 12 or raw[:4] != b"RIFF" or raw[8:12] != b"WAVE":
        raise FormatError("corrupt container: not a RIFF/WAVE file")

    fmt = None
    data = None
    pos = 12
    while pos + 8 <= len(raw):
        chunk_id = raw[pos:pos + 4]
        (size,) = struct.unpack_from("<I", raw, pos + 4)
        body = raw[pos + 8:pos + 8 + size]
        if len(body) < size:
            raise FormatError(f"corrupt container: chunk {chunk_id!r} truncated")
        if chunk_id == b"fmt ":
            fmt = body
        elif chunk_id == b"data":
            data = body
        pos += 8 + size + (size & 1)  # chunks are word aligned

    if fmt is None or data is None:
        raise FormatError("corrupt container: missing fmt or data chunk")
    if len(fmt) < 16:
        raise FormatError("corrupt container: fmt chunk too short")

    tag, channels, rate, _byte_rate, _block, bits = struct.unpack_from("<HHIIHH", fmt, 0)
    if channels != 1:
        raise ValidationError(f"expected mono input, got {channels} channels")

    if tag == 3 and bits == 32:
        samples = np.frombuffer(data, dtype="<f4").astype(np.float32)
    elif tag == 1 and bits == 16:
        samples = np.frombuffer(data, dtype="<i2").astype(np.float32) / 32768.0
    else:
        raise FormatError(f"unsupported format: tag {tag} with {bits}-bit samples")

    if not np.all(np.isfinite(samples)):
        raise FormatError("corrupt container: non-finite samples")
    return samples, int(rate)
