"""Exception types shared across the package."""


class IstructError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(IstructError):
    """Vector or matrix shape does not match the declared dimension."""


class DescriptorError(IstructError):
    """A norm descriptor violates its construction invariants."""


class QuadratureError(IstructError):
    """The doubling quadrature did not settle within its node budget."""


class StructureValidationError(IstructError):
    """A candidate i-operator failed validation.

    Carries the certificate with the worst witness so the rejection is
    reproducible.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class RespectViolationError(IstructError):
    """T A != B T beyond tolerance; carries the max-entry witness."""

    def __init__(self, message, residual=None, witness=None):
        super().__init__(message)
        self.residual = residual
        self.witness = witness


class CompositionError(IstructError):
    """Operators are not composable (structure mismatch)."""


class WitnessError(IstructError):
    """Hypotheses of a constructive witness are not satisfied."""


class ScenarioError(IstructError):
    """A scenario file failed to parse or resolve."""
