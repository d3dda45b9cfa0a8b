"""Exceptions shared across the package."""


class ValidationError(ValueError):
    """Bad user input: unsupported type, malformed selector, out-of-range rank."""


class ConsistencyError(RuntimeError):
    """An internal invariant failed; this indicates a math bug, not bad input."""


class CyclicVectorError(ValidationError):
    """The chosen cyclic vector does not generate; carries the achieved rank."""

    def __init__(self, rank_found, needed):
        super().__init__("cyclic vector generates a subspace of rank %d < %d"
                         % (rank_found, needed))
        self.rank_found = rank_found
        self.needed = needed


class SlopeVerificationError(ConsistencyError):
    """The leading term at infinity failed the non-nilpotency test."""
