"""Syllable separability analysis for ultrasonic recordings.

The pipeline: condition a recording (spectral gate, high-pass,
integer time stretch, resample), extract framewise cepstral features,
pool them into per-syllable embeddings, then score how separable the
syllable classes are under a discriminant projection.
"""

from .audio_io import AudioClip, read_wav, write_wav
from .cepstral import CepstralConfig, cepstral_features, triangular_filterbank
from .dataset import (
    PoolFailure,
    SyllableAnnotation,
    SyllableEmbedding,
    parse_annotations,
    parse_embeddings,
    pool_syllables,
    synthesize_dataset,
)
from .dsp import PreprocessConfig, highpass, noise_gate, preprocess_pipeline, resample, stretch_relabel
from .errors import FormatError, NumericalError, ParameterError, SyllasepError, ValidationError
from .frames import FrameMatrix
from .separability import (
    LdaModel,
    SeparabilityReport,
    analyze,
    fit_lda,
    mahalanobis_matrix,
    pooled_covariance,
    project,
    silhouettes,
    stack_embeddings,
)
from .sylf import read_frames, write_frames

__version__ = "0.1.0"

__all__ = [
    "AudioClip",
    "CepstralConfig",
    "FormatError",
    "FrameMatrix",
    "LdaModel",
    "NumericalError",
    "ParameterError",
    "PoolFailure",
    "PreprocessConfig",
    "SeparabilityReport",
    "SyllasepError",
    "SyllableAnnotation",
    "SyllableEmbedding",
    "ValidationError",
    "analyze",
    "cepstral_features",
    "fit_lda",
    "highpass",
    "mahalanobis_matrix",
    "noise_gate",
    "parse_annotations",
    "parse_embeddings",
    "pool_syllables",
    "pooled_covariance",
    "preprocess_pipeline",
    "project",
    "read_frames",
    "read_wav",
    "resample",
    "silhouettes",
    "stack_embeddings",
    "stretch_relabel",
    "synthesize_dataset",
    "triangular_filterbank",
    "write_frames",
    "write_wav",
]
