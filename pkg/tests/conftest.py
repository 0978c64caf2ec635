"""Shared helpers for the analysis test suite.

The acceptance pass/fail reporter lives in the repo-root conftest so
it also covers the exporter suite.
"""

from __future__ import annotations

import numpy as np
import pytest

from syllasep import AudioClip


def rms(x: np.ndarray) -> float:
    return float(np.sqrt(np.mean(np.square(np.asarray(x, dtype=np.float64)))))


def dbfs(x: np.ndarray) -> float:
    return 20.0 * np.log10(max(rms(x), 1e-300))


def tone(freq_hz: float, rate_hz: int, duration_s: float, amplitude: float = 0.5) -> AudioClip:
    t = np.arange(int(round(duration_s * rate_hz))) / rate_hz
    return AudioClip((amplitude * np.sin(2.0 * np.pi * freq_hz * t)).astype(np.float32), rate_hz)


def spectrum_peak_hz(clip: AudioClip) -> float:
    mags = np.abs(np.fft.rfft(clip.samples.astype(np.float64)))
    freqs = np.fft.rfftfreq(clip.num_samples, d=1.0 / clip.sample_rate_hz)
    return float(freqs[int(np.argmax(mags))])


def silhouettes_reference(distances: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Literal double-loop silhouette, kept naive on purpose."""
    n = len(labels)
    classes = sorted(set(labels))
    out = np.zeros(n)
    for i in range(n):
        own = labels[i]
        own_others = [j for j in range(n) if labels[j] == own and j != i]
        if not own_others:
            out[i] = 0.0
            continue
        a = sum(distances[i, j] for j in own_others) / len(own_others)
        b = min(
            sum(distances[i, j] for j in range(n) if labels[j] == other) /
            sum(1 for j in range(n) if labels[j] == other)
            for other in classes if other != own
        )
        out[i] = 0.0 if max(a, b) == 0.0 else (b - a) / max(a, b)
    return out
