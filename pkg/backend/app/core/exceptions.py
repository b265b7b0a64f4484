"""
Exception hierarchy shared by all services.
"""


class FmzvError(Exception):
    """Base class for verifier errors."""


class DomainError(FmzvError, ValueError):
    """An argument lies outside the domain of an operation."""


class NotInH1Error(DomainError):
    """A word is not in the subspace an operation requires."""


class HypothesisError(DomainError):
    """A theorem case violates the hypotheses of its statement."""


class CapabilityError(FmzvError):
    """The request is beyond what the verifier computes at desk scale."""


class AccuracyError(FmzvError):
    """A numeric evaluation cannot meet its precision contract."""


class SkipPrime(FmzvError):
    """
    A prime must be left out of a modular sweep.

    Attributes:
        prime: The offending prime
        reason: Short explanation shown in reports
    """

    def __init__(self, prime: int, reason: str):
        super().__init__(f"p={prime}: {reason}")
        self.prime = prime
        self.reason = reason

    def __reduce__(self):
        return (SkipPrime, (self.prime, self.reason))
