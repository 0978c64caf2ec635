"""Exception taxonomy shared across the package.

Each class maps to one failure mode so callers (and the CLI) can route
errors without string matching.
"""


class SyllasepError(Exception):
    """Base class for all package errors."""


class ParameterError(SyllasepError, ValueError):
    """A configuration value or function argument is out of range."""


class ValidationError(SyllasepError, ValueError):
    """Input data violates a structural precondition (shape, labels, ...)."""


class FormatError(SyllasepError):
    """A file or byte stream does not conform to its container format."""


class NumericalError(SyllasepError):
    """A linear-algebra step failed; usually fixed by more regularization."""
