"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the supported parameter regime."""


class DegeneracyError(ArithmeticError):
    """A closed-form denominator vanishes (zone boundary or coupling pole)."""


class ConsistencyError(RuntimeError):
    """An oracle found its own numerical construction self-inconsistent."""
