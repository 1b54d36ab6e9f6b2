"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class MarkovHullError(Exception):
    pass


class FuelExhausted(MarkovHullError):
    """A promise-based search ran out of budget.

    Not a bug: either the promise the caller made was false (e.g. the real
    really is zero) or the budget was too small, and no finite run can tell
    the two apart.
    """

    def __init__(self, spent: int, limit: int, what: str = "search"):
        super().__init__(f"{what}: fuel exhausted after {spent} of {limit} units")
        self.spent = spent
        self.limit = limit


class PromiseViolation(MarkovHullError):
    """A promise flagged on the input was observed to be false."""


class PreconditionViolated(MarkovHullError):
    pass


class InputDegenerate(MarkovHullError):
    """The point set does not satisfy the positive non-collinearity hypothesis."""


class DuplicatePoint(InputDegenerate):
    def __init__(self, i: int, j: int):
        super().__init__(f"points {i} and {j} coincide")
        self.indices = (i, j)


class CollinearTriple(InputDegenerate):
    def __init__(self, triple: tuple[int, int, int]):
        super().__init__(f"points {triple} are collinear")
        self.triple = triple


class WitnessTooWeak(MarkovHullError):
    """A decision did not resolve at the resolution the separation witness promised."""


class ParseError(MarkovHullError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno
