"""Error taxonomy for the feature exporter."""


class ExportError(Exception):
    """Base class for exporter failures."""


class ValidationError(ExportError, ValueError):
    """Input audio or request parameters violate the exporter contract."""


class FormatError(ExportError):
    """Input container is malformed or uses an unsupported encoding."""


class ModelResolutionError(ExportError):
    """The requested encoder cannot be resolved or its weights loaded."""
