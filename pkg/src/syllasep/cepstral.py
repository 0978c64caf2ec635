"""Short-time cepstral features on mel or linear frequency scales.

Frames are Hann windowed (pre-emphasis off by default), power spectra
pass through unit-peak triangular filters, and log energies (natural
log, floored) go through an orthonormal DCT-II keeping c0 by default.
With the default 400/320 window and hop at 16 kHz this yields one
13-dim frame every 20 ms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import dct

from .audio_io import AudioClip
from .errors import ParameterError
from .frames import FrameMatrix

LOG_FLOOR = 1e-10

FILTER_KINDS = ("mel", "linear")


@dataclass
class CepstralConfig:
    """Settings for cepstral feature extraction."""

    kind: str = "mel"
    fft_size: int = 400
    hop: int = 320
    num_filters: int = 26
    num_coeffs: int = 13
    fmin_hz: float = 0.0
    fmax_hz: float = 8000.0
    include_c0: bool = True
    pre_emphasis: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in FILTER_KINDS:
            raise ParameterError(f"kind must be one of {FILTER_KINDS}, got {self.kind!r}")
        if self.fft_size < 2:
            raise ParameterError(f"fft_size must be at least 2, got {self.fft_size}")
        if self.hop < 1:
            raise ParameterError(f"hop must be positive, got {self.hop}")
        if self.num_filters < 1:
            raise ParameterError(f"num_filters must be positive, got {self.num_filters}")
        # without c0 the kept coefficients are 1..num_coeffs, so one more
        # filter output is needed than in the default case
        top = self.num_filters - (0 if self.include_c0 else 1)
        if not 1 <= self.num_coeffs <= top:
            raise ParameterError(
                f"num_coeffs must lie in [1, {top}] for num_filters={self.num_filters}, got {self.num_coeffs}"
            )
        if self.fmin_hz < 0.0 or self.fmax_hz <= self.fmin_hz:
            raise ParameterError(
                f"need 0 <= fmin_hz < fmax_hz, got fmin={self.fmin_hz} fmax={self.fmax_hz}"
            )
        if not 0.0 <= self.pre_emphasis < 1.0:
            raise ParameterError(f"pre_emphasis must lie in [0, 1), got {self.pre_emphasis}")


def hz_to_mel(f):
    """HTK mel scale: 2595 * log10(1 + f / 700)."""
    return 2595.0 * np.log10(1.0 + np.asarray(f, dtype=np.float64) / 700.0)


def mel_to_hz(m):
    return 700.0 * (10.0 ** (np.asarray(m, dtype=np.float64) / 2595.0) - 1.0)


def triangular_filterbank(kind: str, num_filters: int, fmin_hz: float, fmax_hz: float,
                          bin_freqs: np.ndarray) -> np.ndarray:
    """Unit-peak triangular filters evaluated at the given frequencies.

    Centers are spaced uniformly in mel (kind="mel") or in Hz
    (kind="linear") between fmin_hz and fmax_hz, with band edges at the
    neighboring centers. Returns a (num_filters, len(bin_freqs)) array.
    """
    if kind not in FILTER_KINDS:
        raise ParameterError(f"kind must be one of {FILTER_KINDS}, got {kind!r}")
    if kind == "mel":
        points = mel_to_hz(np.linspace(hz_to_mel(fmin_hz), hz_to_mel(fmax_hz), num_filters + 2))
    else:
        points = np.linspace(fmin_hz, fmax_hz, num_filters + 2)
    lower = points[:-2, None]
    center = points[1:-1, None]
    upper = points[2:, None]
    f = np.asarray(bin_freqs, dtype=np.float64)[None, :]
    rising = (f - lower) / (center - lower)
    falling = (upper - f) / (upper - center)
    return np.clip(np.minimum(rising, falling), 0.0, None)


def cepstral_features(clip: AudioClip, config: CepstralConfig) -> FrameMatrix:
    """Extract framewise cepstral coefficients from a clip.

    Yields floor((n - fft_size) / hop) + 1 frames; frame i covers
    samples [i*hop, i*hop + fft_size) and is stamped at the window
    center, so offset_seconds = (fft_size / 2) / rate.
    """
    rate = clip.sample_rate_hz
    if rate < 2.0 * config.fmax_hz:
        raise ParameterError(
            f"sample rate {rate} cannot represent fmax_hz {config.fmax_hz}; need at least {2.0 * config.fmax_hz:g}"
        )
    n = clip.num_samples
    if n < config.fft_size:
        raise ParameterError(
            f"insufficient samples: clip has {n} but one {config.fft_size}-sample frame is required"
        )

    samples = clip.samples.astype(np.float64)
    if config.pre_emphasis > 0.0:
        samples = np.concatenate([samples[:1], samples[1:] - config.pre_emphasis * samples[:-1]])

    num_frames = (n - config.fft_size) // config.hop + 1
    starts = np.arange(num_frames) * config.hop
    frames = np.lib.stride_tricks.sliding_window_view(samples, config.fft_size)[starts]

    win = 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(config.fft_size) / config.fft_size)
    power = np.abs(np.fft.rfft(frames * win, axis=1)) ** 2 / config.fft_size

    bin_freqs = np.fft.rfftfreq(config.fft_size, d=1.0 / rate)
    fb = triangular_filterbank(config.kind, config.num_filters, config.fmin_hz, config.fmax_hz, bin_freqs)
    log_energy = np.log(np.maximum(power @ fb.T, LOG_FLOOR))

    first = 0 if config.include_c0 else 1
    coeffs = dct(log_energy, type=2, norm="ortho", axis=1)[:, first:first + config.num_coeffs]
    return FrameMatrix(
        data=coeffs,
        hop_seconds=config.hop / rate,
        offset_seconds=(config.fft_size / 2.0) / rate,
    )
