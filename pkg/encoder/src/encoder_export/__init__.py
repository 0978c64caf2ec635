"""Frame-feature export from self-supervised audio encoders."""

from .errors import ExportError, FormatError, ModelResolutionError, ValidationError
from .export import (
    FRAME_HOP_SECONDS,
    FRAME_OFFSET_SECONDS,
    REQUIRED_RATE_HZ,
    ExportRequest,
    export_features,
)
from .models import KNOWN_MODELS, LoadedEncoder, load_encoder
from .sylfout import write_frames
from .wavio import read_wav

__version__ = "0.1.0"

__all__ = [
    "ExportError",
    "ExportRequest",
    "FormatError",
    "FRAME_HOP_SECONDS",
    "FRAME_OFFSET_SECONDS",
    "KNOWN_MODELS",
    "LoadedEncoder",
    "ModelResolutionError",
    "REQUIRED_RATE_HZ",
    "ValidationError",
    "export_features",
    "load_encoder",
    "read_wav",
    "write_frames",
    "__version__",
]
