"""Exception types and the search-node budget shared by every module."""

from __future__ import annotations

DEFAULT_BUDGET = 10**7


class QolabError(Exception):
    """Base class for every error raised by qolab."""


class MalformedInput(QolabError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidRelation(QolabError, ValueError):
    """A matrix failed the validation required by a relation subtype."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class IndexOutOfRange(QolabError, IndexError):
    pass


class BudgetExceeded(QolabError):
    pass


class PropositionViolated(QolabError):
    """A finite instance contradicts a statement that is supposed to be a theorem."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class HypothesisViolated(QolabError):
    def __init__(self, message: str, independent=None, family_member=None):
        self.independent = independent
        self.family_member = family_member
        super().__init__(message)


class NotInAuxGraph(QolabError):
    pass


class NotAntichain(QolabError):
    pass


class WrongCardinality(QolabError):
    pass


class NotIndependent(QolabError):
    pass


class MissingLeaf(QolabError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"no leaf set for frontier sequence {node!r}")


class Budget:
    """Counts search nodes and raises once the cap is passed.

    ``Budget(None)`` never trips.
    """

    __slots__ = ("cap", "used")

    def __init__(self, cap: int | None = DEFAULT_BUDGET):
        self.cap = cap
        self.used = 0

    def tick(self, amount: int = 1) -> None:
        self.used += amount
        if self.cap is not None and self.used > self.cap:
            raise BudgetExceeded(f"search budget of {self.cap} nodes exhausted")


def as_budget(budget: Budget | int | None) -> Budget:
    if isinstance(budget, Budget):
        return budget
    if budget is None:
        return Budget(DEFAULT_BUDGET)
    return Budget(budget)
