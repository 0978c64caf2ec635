"""Run an encoder over a preprocessed WAV and emit SYLF frame features.

The exporter does no signal processing of its own: the input must
already be a 16 kHz mono recording, and the waveform goes into the
model exactly as stored. All encoders here frame at 20 ms with the
first frame centered at the clip start.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch

from .errors import ValidationError
from .models import load_encoder
from .sylfout import write_frames
from .wavio import read_wav

REQUIRED_RATE_HZ = 16000
FRAME_HOP_SECONDS = 0.02
FRAME_OFFSET_SECONDS = 0.0
MIN_SAMPLES = 400  # conv front-end receptive field for one output frame


@dataclass
class ExportRequest:
    """One WAV-to-SYLF export job."""

    input_wav: str
    model_id: str
    output: str
    layer: int = 12  # final transformer layer of the base architectures

    def __post_init__(self) -> None:
        if self.layer < 0:
            raise ValidationError(f"layer must be nonnegative, got {self.layer}")


def export_features(request: ExportRequest) -> tuple[int, int]:
    """Export hidden-state frames for one clip; returns (num_frames, dim)."""
    samples, rate = read_wav(request.input_wav)
    if rate != REQUIRED_RATE_HZ:
        raise ValidationError(
            f"input must be {REQUIRED_RATE_HZ} Hz, got {rate} Hz; resample upstream"
        )
    if samples.size < MIN_SAMPLES:
        raise ValidationError(
            f"input too short: {samples.size} samples, need at least {MIN_SAMPLES}"
        )

    encoder = load_encoder(request.model_id)
    if request.layer > encoder.num_layers:
        raise ValidationError(
            f"layer must lie in [0, {encoder.num_layers}], got {request.layer}"
        )

    with torch.inference_mode():
        out = encoder.model(torch.from_numpy(samples)[None, :], output_hidden_states=True)
    feats = out.hidden_states[request.layer][0].cpu().numpy().astype(np.float32)

    source_name = f"{request.model_id} layer={request.layer}"
    write_frames(feats, FRAME_HOP_SECONDS, FRAME_OFFSET_SECONDS, source_name, request.output)
    return feats.shape[0], feats.shape[1]
