"""Exception types shared across the package."""


class DephnetError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(DephnetError):
    """Inputs have incompatible shapes or dimensions."""


class AsymmetricCoupling(DephnetError):
    """Coupling matrix is not symmetric or has a nonzero diagonal."""


class NegativeDephasing(DephnetError):
    """A dephasing rate is negative."""


class InvariantViolation(DephnetError):
    """A physical invariant (trace, Hermiticity, positivity, symmetry) broke."""


class SameSiteFermion(DephnetError):
    """Fermionic pair state requested with both particles on one site."""


class FermionNotAllowed(DephnetError):
    """Initial state exists only for bosons."""


class NegativeProbability(DephnetError):
    """A joint-probability entry is negative beyond round-off."""


class NormalizationError(DephnetError):
    """State normalization is off beyond tolerance."""


class StepTooLarge(DephnetError):
    """Integration step too coarse for the requested rates."""


class ZeroMatrix(DephnetError):
    """An all-zero matrix where a distribution was expected."""


class EigSolverFailure(DephnetError):
    """Eigenvalue decomposition did not converge."""


class ConfigError(DephnetError):
    """Experiment configuration is missing or malformed; carries the field name."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"config field '{field}': {message}")
