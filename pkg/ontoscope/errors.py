"""
Exception hierarchy for ontoscope.

Everything derives from ``ValueError`` so callers that only care about
"bad input" can keep catching that.
"""


class OntoscopeError(ValueError):
    """Base class for all ontoscope errors."""


class DimensionMismatchError(OntoscopeError):
    pass


class NormalizationError(OntoscopeError):
    pass


class InvalidOperatorError(OntoscopeError):
    pass


class SpaceMismatchError(OntoscopeError):
    pass


class UnknownOutcomeError(OntoscopeError):
    pass


class MissingResponseError(OntoscopeError):
    pass


class MissingPreparationError(OntoscopeError):
    pass


class UndefinedEpistemicityError(OntoscopeError):
    """f(psi, phi) is a ratio and has no value for orthogonal states."""


class SamplingError(OntoscopeError):
    pass


class ContextMismatchError(OntoscopeError):
    pass


class ConfigurationError(OntoscopeError):
    pass


class CapacityError(OntoscopeError):
    pass


class SchemaError(OntoscopeError):
    """Raised when a model document fails validation."""

    def __init__(self, errors):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__("; ".join(self.errors) if self.errors else "invalid model document")
