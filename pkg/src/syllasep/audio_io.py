"""Single-channel audio container plus RIFF/WAVE read and write.

Decoding always lands in float32: 16- and 24-bit PCM are exact in a
24-bit mantissa, and float payloads pass through bit-for-bit, which is
what makes the write/read roundtrip an identity.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import FormatError, ParameterError

WAVE_FORMAT_PCM = 1
WAVE_FORMAT_IEEE_FLOAT = 3
WAVE_FORMAT_EXTENSIBLE = 0xFFFE


@dataclass
class AudioClip:
    """A mono waveform with its sample rate.

    samples
        1-D float32 array; every value must be finite.
    sample_rate_hz
        Positive integer sampling rate.
    """

    samples: np.ndarray
    sample_rate_hz: int

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=np.float32)
        if samples.ndim != 1:
            raise ParameterError(f"samples must be 1-D, got shape {samples.shape}")
        if not np.all(np.isfinite(samples)):
            raise ParameterError("samples contain NaN or infinity")
        if not isinstance(self.sample_rate_hz, (int, np.integer)) or self.sample_rate_hz <= 0:
            raise ParameterError(f"sample_rate_hz must be a positive integer, got {self.sample_rate_hz!r}")
        self.samples = samples
        self.sample_rate_hz = int(self.sample_rate_hz)

    @property
    def num_samples(self) -> int:
        return self.samples.shape[0]

    @property
    def duration_seconds(self) -> float:
        return self.num_samples / self.sample_rate_hz


def _require(nbytes: int, available: int, what: str) -> None:
    if available < nbytes:
        raise FormatError(f"corrupt container: truncated {what}")


def read_wav(path) -> AudioClip:
    """Read a RIFF/WAVE file into an AudioClip.

    Accepts PCM (format tag 1) at 16, 24, or 32 bits and IEEE float
    (format tag 3) at 32 bits. Multi-channel content is mixed down by
    averaging channels. Integer samples are scaled by 2**(bits-1).
    """
    with open(path, "rb") as fh:
        raw = fh.read()

    _require(12, len(raw), "RIFF header")
    if raw[0:4] != b"RIFF" or raw[8:12] != b"WAVE":
        raise FormatError("corrupt container: missing RIFF/WAVE signature")

    fmt = None
    data = None
    pos = 12
    while pos + 8 <= len(raw):
        chunk_id = raw[pos:pos + 4]
        (chunk_size,) = struct.unpack_from("<I", raw, pos + 4)
        body = pos + 8
        if chunk_id == b"fmt ":
            _require(16, chunk_size, "fmt chunk")
            _require(body + 16, len(raw), "fmt chunk")
            fmt = struct.unpack_from("<HHIIHH", raw, body)
        elif chunk_id == b"data":
            _require(body + chunk_size, len(raw), "data chunk")
            data = raw[body:body + chunk_size]
        # chunks are word aligned; odd sizes carry a pad byte
        pos = body + chunk_size + (chunk_size & 1)

    if fmt is None:
        raise FormatError("corrupt container: no fmt chunk")
    if data is None:
        raise FormatError("corrupt container: no data chunk")

    tag, num_channels, sample_rate, _byte_rate, block_align, bits = fmt
    if tag == WAVE_FORMAT_EXTENSIBLE:
        raise FormatError(f"unsupported format: tag {tag} (extensible) is not plain PCM or IEEE float")
    if tag not in (WAVE_FORMAT_PCM, WAVE_FORMAT_IEEE_FLOAT):
        raise FormatError(f"unsupported format: tag {tag} is not PCM or IEEE float")
    if num_channels < 1:
        raise FormatError("corrupt container: zero channels")

    if tag == WAVE_FORMAT_PCM:
        if bits == 16:
            flat = np.frombuffer(data[:len(data) - len(data) % 2], dtype="<i2")
            scaled = flat.astype(np.float64) / 2.0 ** 15
        elif bits == 24:
            usable = len(data) - len(data) % 3
            triples = np.frombuffer(data[:usable], dtype=np.uint8).reshape(-1, 3).astype(np.int32)
            vals = triples[:, 0] | (triples[:, 1] << 8) | (triples[:, 2] << 16)
            vals = (vals ^ 0x800000) - 0x800000
            scaled = vals.astype(np.float64) / 2.0 ** 23
        elif bits == 32:
            flat = np.frombuffer(data[:len(data) - len(data) % 4], dtype="<i4")
            scaled = flat.astype(np.float64) / 2.0 ** 31
        else:
            raise FormatError(f"unsupported format: {bits}-bit PCM")
    else:
        if bits != 32:
            raise FormatError(f"unsupported format: {bits}-bit IEEE float")
        scaled = np.frombuffer(data[:len(data) - len(data) % 4], dtype="<f4")

    if block_align and len(data) % block_align != 0:
        raise FormatError("corrupt container: data size is not a whole number of sample frames")
    if scaled.size % num_channels != 0:
        raise FormatError("corrupt container: data size is not a whole number of sample frames")

    frames = scaled.reshape(-1, num_channels)
    mono = frames.mean(axis=1) if num_channels > 1 else frames[:, 0]
    return AudioClip(samples=np.asarray(mono, dtype=np.float32), sample_rate_hz=int(sample_rate))


def write_wav(clip: AudioClip, path) -> None:
    """Write an AudioClip as a mono 32-bit IEEE float WAV."""
    payload = np.ascontiguousarray(clip.samples, dtype="<f4").tobytes()
    rate = clip.sample_rate_hz
    block_align = 4
    # 18-byte fmt (cbSize = 0) plus a fact chunk, as non-PCM writers should emit
    fmt = struct.pack("<HHIIHHH", WAVE_FORMAT_IEEE_FLOAT, 1, rate, rate * block_align, block_align, 32, 0)
    fact = struct.pack("<I", clip.num_samples)
    riff_size = 4 + (8 + len(fmt)) + (8 + len(fact)) + (8 + len(payload))
    with open(path, "wb") as fh:
        fh.write(b"RIFF" + struct.pack("<I", riff_size) + b"WAVE")
        fh.write(b"fmt " + struct.pack("<I", len(fmt)) + fmt)
        fh.write(b"fact" + struct.pack("<I", len(fact)) + fact)
        fh.write(b"data" + struct.pack("<I", len(payload)) + payload)
