"""Shared exception types.

Budget overruns are always errors, never silently-wrong answers: callers that
hit a budget must either raise the budget flag or shrink the input.
"""


class IcotkError(Exception):
    """Base class for all toolkit errors."""


class ParseError(IcotkError):
    """Polynomial text does not conform to the grammar.

    Carries the byte offset of the first offending character.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class NotDivisibleError(IcotkError):
    """exact_div was asked for a quotient that does not exist."""


class BudgetExceededError(IcotkError):
    """A configured work budget (reduction steps, factoring effort, ...) ran out."""


class FactorBudgetError(BudgetExceededError):
    """Integer could not be factored within the configured effort; the input
    is reported unfactored rather than returning a non-radical."""


class BasePointError(IcotkError):
    """A rational map was evaluated at a point of its base locus."""


class NotOnSurfaceError(IcotkError):
    """A point claimed to lie on sigma2 = sigma4 = 0 does not."""
