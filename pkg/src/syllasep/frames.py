"""Frame-indexed feature matrices with an explicit time mapping."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass
class FrameMatrix:
    """A (num_frames, dim) float matrix on a uniform time grid.

    Frame i is centered at offset_seconds + i * hop_seconds. The data
    array is stored float64 in memory; interchange formats quantize to
    float32 on write.
    """

    data: np.ndarray
    hop_seconds: float
    offset_seconds: float = 0.0

    def __post_init__(self) -> None:
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 2:
            raise ParameterError(f"frame data must be 2-D, got shape {data.shape}")
        if data.shape[1] < 1:
            raise ParameterError("frame dimension must be at least 1")
        if not np.all(np.isfinite(data)):
            raise ParameterError("frame data contains NaN or infinity")
        if not self.hop_seconds > 0.0:
            raise ParameterError(f"hop_seconds must be positive, got {self.hop_seconds}")
        if self.offset_seconds < 0.0:
            raise ParameterError(f"offset_seconds must be nonnegative, got {self.offset_seconds}")
        self.data = data
        self.hop_seconds = float(self.hop_seconds)
        self.offset_seconds = float(self.offset_seconds)

    @property
    def num_frames(self) -> int:
        return self.data.shape[0]

    @property
    def dim(self) -> int:
        return self.data.shape[1]

    def frame_times(self) -> np.ndarray:
        """Center time of every frame, in seconds."""
        return self.offset_seconds + np.arange(self.num_frames) * self.hop_seconds
