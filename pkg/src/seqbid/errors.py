"""Exception types raised by the solvers and tools."""


class SeqBidError(Exception):
    """Base class for all package errors."""


class ValidationError(SeqBidError, ValueError):
    """An instance or input violates a model invariant."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class DomainError(SeqBidError, ValueError):
    pass


class CapacityError(SeqBidError):
    """The requested computation is too large for the exact method."""


class SequencingError(SeqBidError):
    pass


class MismatchError(SeqBidError, ValueError):
    """A strategy was solved on a different instance."""


class ConfigError(SeqBidError, ValueError):
    pass
