"""Shared exception types."""


class DomainError(ValueError):
    """Input lies outside the mathematical domain of an operation."""


class SingularityError(DomainError):
    """Evaluation was requested too close to a coordinate singularity."""


class ConsistencyError(ValueError):
    """Supplied data violates a structural identity it is required to satisfy."""
