"""Exception types shared across the package."""


class EurqmError(Exception):
    """Base class for all package errors."""


class ContractViolation(EurqmError, ValueError):
    """An input failed a structural precondition (shape, hermiticity, unitarity...)."""


class DomainError(EurqmError, ValueError):
    """A scalar parameter lies outside its admissible range."""


class CapacityError(EurqmError, RuntimeError):
    """A computation would exceed the configured enumeration budget."""


class InvariantViolation(EurqmError, AssertionError):
    """A computed result failed one of its post-conditions."""


class VerificationFailure(EurqmError):
    """Monte-Carlo verification found an inequality violated beyond tolerance."""

    def __init__(self, summary):
        self.summary = summary
        super().__init__(summary.describe_failures())
