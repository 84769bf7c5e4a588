"""Exception types shared across the package."""


class YbeError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(YbeError):
    """An axiom or invariant failed.  ``witness`` pins down where."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ConstructionRejected(YbeError):
    """A constructor's hypothesis failed.  Carries the named condition."""

    def __init__(self, condition: str, message: str, checks=None):
        super().__init__(f"{condition}: {message}")
        self.condition = condition
        self.checks = checks if checks is not None else []


class CapExceeded(YbeError):
    """A closure or search outgrew its configured size cap."""


class Undecided(YbeError):
    """The question is beyond the configured decision caps."""
