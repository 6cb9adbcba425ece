"""Exception hierarchy for lexpref."""

from __future__ import annotations


class LexprefError(Exception):
    """Base class for all library errors."""


class DimensionError(LexprefError, ValueError):
    pass


class SubsetError(LexprefError, ValueError):
    pass


class SpecError(LexprefError, ValueError):
    """Bad oracle parameters or an unparsable oracle identifier."""


class BadGridSpec(LexprefError, ValueError):
    pass


class IncompleteOracle(LexprefError):
    """An oracle returned Incomparable where a complete relation is required."""


class MonotonicityPrereqFailed(LexprefError):
    pass


class CycleError(LexprefError):
    def __init__(self, triple: tuple[int, int, int]):
        self.triple = triple
        i, j, k = triple
        super().__init__(f"importance relation has a cycle: {i} >* {j} >* {k} >* {i}")


class IncompleteRelation(LexprefError):
    pass


class LinkFailure(LexprefError):
    def __init__(self, k: int, outcome, points):
        self.k = k
        self.outcome = outcome
        self.points = points
        super().__init__(f"chain link {k} is not strict: got {outcome.value}")


class ParseError(LexprefError, ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class SchemaMismatch(LexprefError, ValueError):
    pass


class DimensionTooLarge(LexprefError, ValueError):
    pass
