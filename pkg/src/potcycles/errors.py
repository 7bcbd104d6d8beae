"""Exception hierarchy shared by every module in the package."""


class PotCyclesError(Exception):
    """Base class for all package errors."""


class SequenceFormatError(PotCyclesError, ValueError):
    """Malformed sequence text (bad token, negative value, empty input)."""


class PreconditionError(PotCyclesError, ValueError):
    """An operation was called outside its documented domain."""


class CapExceeded(PotCyclesError, ValueError):
    """A brute-force routine refused an input larger than its configured cap."""


class SearchExhausted(PotCyclesError, RuntimeError):
    """A bounded search ran out of budget.

    Every search in this package is backed by an existence theorem, so at
    desk scale this means either the budget is too small or there is a bug.
    """


class LemmaContradiction(PotCyclesError, RuntimeError):
    """A reduction the construction relies on produced an impossible result,
    e.g. a residual sequence that should be graphic is not."""


class ClaimViolation(LemmaContradiction):
    """A claimed-but-unproved inequality failed at runtime.

    Carries the offending instance so it can be reported as a finding.
    """

    def __init__(self, message, instance=None):
        super().__init__(message)
        self.instance = instance
