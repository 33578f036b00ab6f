"""Exception types shared across the package."""

from __future__ import annotations


class CoeventsError(Exception):
    """Base class for all errors raised by this package."""


class MismatchedSpace(CoeventsError):
    """Operands are bound to different sample spaces / coevent spaces."""


class UnknownHistory(CoeventsError):
    """A history label is not part of the sample space."""


class CapExceeded(CoeventsError):
    """An enumeration would exceed its size cap.

    Carries enough context for a caller (notably the CLI) to tell the
    user which cap fired and how to override it.
    """

    def __init__(self, what: str, limit: int, requested: int, override: str = "--cap"):
        self.what = what
        self.limit = limit
        self.requested = requested
        self.override = override
        super().__init__(
            f"{what}: size {requested} exceeds cap {limit} (override with {override})"
        )


class InvalidPartition(CoeventsError):
    """Blocks are empty, overlapping, or do not cover the sample space."""


class NonRealDiagonal(CoeventsError):
    """A decoherence matrix produced a non-real event measure."""


class EmptyEventDual(CoeventsError):
    """Dual of the empty event requested without include_empty_dual."""


class NotMultiplicative(CoeventsError):
    """Operation requires a multiplicative coevent."""


class ZeroCoevent(CoeventsError):
    """Operation requires a nonzero coevent."""


class NotUpperMode(CoeventsError):
    """Operation requires a union/intersection (upper) completion."""


class NotASubobject(CoeventsError):
    """A selection is not monotone, so it is not a subobject."""


class ConsistencyError(CoeventsError):
    """Two independent computations of the same value disagreed.

    Raised by the dual-route cross checks (Heyting implication,
    characteristic maps).  Seeing this means a bug, not bad input.
    """


class ParseError(CoeventsError):
    """A theory file is not syntactically well formed."""


class ValidationError(CoeventsError):
    """A theory file parses but violates a structural invariant."""
