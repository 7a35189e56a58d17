"""Exception types shared across the package."""


class WavecwtError(Exception):
    """Base class for all domain errors raised by this package."""


class ValidationError(WavecwtError, ValueError):
    """Invalid argument or malformed object."""


class GridMismatchError(ValidationError):
    """Two fields that must share a grid do not."""


class NonFiniteFieldError(ValidationError):
    """A field contains NaN or infinite samples."""


class EvaluatorMissingError(ValidationError):
    """A wavelet lacks the (position or spectral) evaluator required here."""


class AdmissibilityError(WavecwtError):
    """A wavelet failed admissibility where a finite constant is required."""
