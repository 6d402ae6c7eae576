"""Exception types. Every domain error carries a stable ``code`` used by the CLI."""


class SitorusError(Exception):
    """Base class for domain errors (CLI exit code 2)."""

    code = "DomainError"


class NotPrime(SitorusError, ValueError):
    code = "NotPrime"


class SingularMatrix(SitorusError):
    code = "SingularMatrix"


class DimensionMismatch(SitorusError, ValueError):
    code = "DimensionMismatch"


class NonMonic(SitorusError, ValueError):
    code = "NonMonic"


class NonIntegerCoefficients(SitorusError, ValueError):
    code = "NonIntegerCoefficients"


class DegreeTooLarge(SitorusError):
    code = "DegreeTooLarge"


class ZeroMatrix(SitorusError, ValueError):
    code = "ZeroMatrix"


class WitnessNotFound(SitorusError):
    """Numerical search gave up. Never a disproof of existence."""

    code = "WitnessNotFound"


class OrbitBudgetExceeded(SitorusError):
    code = "OrbitBudgetExceeded"


class LebesgueSingularPush(SitorusError):
    code = "LebesgueSingularPush"


class BudgetExceeded(SitorusError):
    code = "BudgetExceeded"


class SingularL(SitorusError):
    """The frequency matrix [B_1 k | ... | B_n k] is singular."""

    code = "SingularL"


class EnumerationBudget(SitorusError):
    code = "EnumerationBudget"


class NotStronglyIndependent(SitorusError):
    code = "NotStronglyIndependent"
