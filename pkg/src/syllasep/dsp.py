"""Waveform conditioning for ultrasonic recordings.

The chain is: spectral noise gate, high-pass filter, time stretch by
sample-rate relabeling, then polyphase resampling to the analysis rate.
All stages take and return AudioClip values and never mutate input.
"""

from __future__ import annotations

import functools
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import signal

from .audio_io import AudioClip
from .errors import ParameterError

GATE_WINDOW = 1024
GATE_HOP = 256

HIGHPASS_TAPS = 513

RESAMPLE_ATTEN_DB = 90.0
RESAMPLE_CUTOFF_FRAC = 0.475  # of the smaller Nyquist


@dataclass
class PreprocessConfig:
    """Settings for the full conditioning chain."""

    noise_threshold_db: float = -65.0
    noise_reduction_db: float = 90.0
    highpass_cutoff_hz: float = 10000.0
    stretch_factor: int = 8
    target_rate_hz: int = 16000

    def __post_init__(self) -> None:
        if not -120.0 <= self.noise_threshold_db <= 0.0:
            raise ParameterError(f"noise_threshold_db must lie in [-120, 0], got {self.noise_threshold_db}")
        if self.noise_reduction_db < 0.0:
            raise ParameterError(f"noise_reduction_db must be nonnegative, got {self.noise_reduction_db}")
        if self.highpass_cutoff_hz <= 0.0:
            raise ParameterError(f"highpass_cutoff_hz must be positive, got {self.highpass_cutoff_hz}")
        if not isinstance(self.stretch_factor, (int, np.integer)) or self.stretch_factor < 1:
            raise ParameterError(f"stretch_factor must be an integer >= 1, got {self.stretch_factor!r}")
        if not isinstance(self.target_rate_hz, (int, np.integer)) or self.target_rate_hz <= 0:
            raise ParameterError(f"target_rate_hz must be a positive integer, got {self.target_rate_hz!r}")


def _periodic_hann(n: int) -> np.ndarray:
    return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(n) / n)


def noise_gate(clip: AudioClip, threshold_db: float = -65.0, reduction_db: float = 90.0) -> AudioClip:
    """Attenuate STFT bins whose magnitude falls below a dBFS threshold.

    Bin magnitudes are normalized so a full-scale sine reads 0 dBFS at
    its peak bin. Bins below threshold_db are scaled by
    10**(-reduction_db / 20); the rest pass untouched. The output is
    rebuilt by windowed overlap-add, which at this window and hop sums
    to a constant, so ungated material reconstructs exactly.
    """
    if not -120.0 <= threshold_db <= 0.0:
        raise ParameterError(f"threshold_db must lie in [-120, 0], got {threshold_db}")
    if reduction_db < 0.0:
        raise ParameterError(f"reduction_db must be nonnegative, got {reduction_db}")

    n = clip.num_samples
    if n < GATE_WINDOW:
        warnings.warn(f"clip shorter than the {GATE_WINDOW}-sample gate window; returned ungated")
        return AudioClip(clip.samples.copy(), clip.sample_rate_hz)

    win = _periodic_hann(GATE_WINDOW)
    full_scale = win.sum() / 2.0  # peak-bin magnitude of a full-scale sine
    gain = 10.0 ** (-reduction_db / 20.0)
    thresh = full_scale * 10.0 ** (threshold_db / 20.0)

    # pad a full window on each side so every original sample gets
    # complete overlap coverage, then pad up to a whole number of hops
    pad = GATE_WINDOW
    total = pad + n + pad
    total += (-(total - GATE_WINDOW)) % GATE_HOP
    x = np.zeros(total, dtype=np.float64)
    x[pad:pad + n] = clip.samples.astype(np.float64)

    starts = np.arange(0, total - GATE_WINDOW + 1, GATE_HOP)
    frames = np.lib.stride_tricks.sliding_window_view(x, GATE_WINDOW)[starts]
    spectra = np.fft.rfft(frames * win, axis=1)
    spectra[np.abs(spectra) < thresh] *= gain

    out = np.zeros(total, dtype=np.float64)
    norm = np.zeros(total, dtype=np.float64)
    resynth = np.fft.irfft(spectra, n=GATE_WINDOW, axis=1) * win
    wsq = win * win
    for i, s in enumerate(starts):
        out[s:s + GATE_WINDOW] += resynth[i]
        norm[s:s + GATE_WINDOW] += wsq
    covered = norm > 1e-12
    out[covered] /= norm[covered]

    return AudioClip(out[pad:pad + n].astype(np.float32), clip.sample_rate_hz)


@functools.lru_cache(maxsize=16)
def _highpass_taps(cutoff_hz: float, rate_hz: int) -> np.ndarray:
    # spectral inversion of a unity-gain windowed-sinc low-pass; the
    # unit DC sum of the low-pass makes the high-pass null at DC exact
    m = HIGHPASS_TAPS - 1
    t = np.arange(HIGHPASS_TAPS) - m / 2
    fc = cutoff_hz / rate_hz
    low = np.sinc(2.0 * fc * t) * np.hamming(HIGHPASS_TAPS)
    low /= low.sum()
    high = -low
    high[m // 2] += 1.0
    return high


def highpass(clip: AudioClip, cutoff_hz: float = 10000.0) -> AudioClip:
    """Zero-phase-aligned FIR high-pass via a 513-tap windowed sinc."""
    if cutoff_hz <= 0.0:
        raise ParameterError(f"cutoff_hz must be positive, got {cutoff_hz}")
    if cutoff_hz >= clip.sample_rate_hz / 2.0:
        raise ParameterError(
            f"cutoff_hz {cutoff_hz} must sit below the Nyquist rate {clip.sample_rate_hz / 2.0}"
        )
    taps = _highpass_taps(float(cutoff_hz), clip.sample_rate_hz)
    if clip.num_samples == 0:
        return AudioClip(clip.samples.copy(), clip.sample_rate_hz)
    # mode="same" keeps length and absorbs the (taps-1)/2 group delay
    y = signal.oaconvolve(clip.samples.astype(np.float64), taps, mode="same")
    return AudioClip(y.astype(np.float32), clip.sample_rate_hz)


def stretch_relabel(clip: AudioClip, factor: int = 8) -> AudioClip:
    """Slow playback by an integer factor without touching samples.

    Relabeling the sample rate to rate/factor divides every frequency
    by the factor while keeping the waveform bit-identical.
    """
    if not isinstance(factor, (int, np.integer)) or factor < 1:
        raise ParameterError(f"stretch factor must be an integer >= 1, got {factor!r}")
    if clip.sample_rate_hz % factor != 0:
        raise ParameterError(
            f"sample rate {clip.sample_rate_hz} is not divisible by stretch factor {factor}"
        )
    return AudioClip(clip.samples.copy(), clip.sample_rate_hz // int(factor))


@functools.lru_cache(maxsize=16)
def _resample_taps(rate_in: int, rate_out: int) -> tuple[int, int, np.ndarray]:
    g = np.gcd(rate_in, rate_out)
    up = rate_out // g
    down = rate_in // g
    # anti-alias/anti-image filter at the upsampled rate; cutoff sits
    # below the smaller Nyquist with a 90 dB Kaiser design
    nyq_up = rate_in * up / 2.0
    cutoff = RESAMPLE_CUTOFF_FRAC * min(rate_in, rate_out)
    width = 2.0 * (min(rate_in, rate_out) / 2.0 - cutoff)
    numtaps, beta = signal.kaiserord(RESAMPLE_ATTEN_DB, width / nyq_up)
    numtaps |= 1  # odd length keeps the delay an integer at the high rate
    taps = signal.firwin(numtaps, cutoff, window=("kaiser", beta), fs=2.0 * nyq_up)
    return up, down, taps


def resample(clip: AudioClip, target_rate_hz: int = 16000) -> AudioClip:
    """Polyphase resample to target_rate_hz with a windowed-sinc kernel.

    Output length is round(n * target / source); the polyphase result
    is trimmed or zero-padded by at most one sample to enforce it.
    """
    if not isinstance(target_rate_hz, (int, np.integer)) or target_rate_hz <= 0:
        raise ParameterError(f"target_rate_hz must be a positive integer, got {target_rate_hz!r}")
    target_rate_hz = int(target_rate_hz)
    if target_rate_hz == clip.sample_rate_hz:
        return AudioClip(clip.samples.copy(), clip.sample_rate_hz)

    n_out = int(round(clip.num_samples * target_rate_hz / clip.sample_rate_hz))
    if clip.num_samples == 0:
        return AudioClip(np.zeros(0, dtype=np.float32), target_rate_hz)

    up, down, taps = _resample_taps(clip.sample_rate_hz, target_rate_hz)
    y = signal.resample_poly(clip.samples.astype(np.float64), up, down, window=taps)
    if y.shape[0] > n_out:
        y = y[:n_out]
    elif y.shape[0] < n_out:
        y = np.concatenate([y, np.zeros(n_out - y.shape[0])])
    return AudioClip(y.astype(np.float32), target_rate_hz)


def preprocess_pipeline(clip: AudioClip, config: PreprocessConfig) -> AudioClip:
    """Run gate, high-pass, stretch, and resample in order."""
    out = noise_gate(clip, config.noise_threshold_db, config.noise_reduction_db)
    out = highpass(out, config.highpass_cutoff_hz)
    out = stretch_relabel(out, config.stretch_factor)
    out = resample(out, config.target_rate_hz)
    return out
