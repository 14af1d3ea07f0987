"""Exception types shared across the package."""


class RegimetricsError(Exception):
    """Base class for all errors raised by regimetrics."""


class ParseError(RegimetricsError):
    """A file does not match its documented format.

    Carries the source name and 1-based line number of the offending
    record when they are known.
    """

    def __init__(self, message: str, *, source=None, line: int | None = None):
        self.source = str(source) if source is not None else None
        self.line = line
        prefix = ""
        if self.source is not None:
            prefix = self.source
            if line is not None:
                prefix += f":{line}"
            prefix += ": "
        elif line is not None:
            prefix = f"line {line}: "
        super().__init__(prefix + message)


class ValidationError(RegimetricsError):
    """Structured data violates one of its invariants."""


class BudgetError(ValidationError):
    """Active competency costs exceed the available budget."""

    def __init__(self, total_cost: float, budget: float):
        self.total_cost = float(total_cost)
        self.budget = float(budget)
        super().__init__(
            f"competency costs {self.total_cost:g} exceed budget {self.budget:g}"
        )


class InvalidWindowError(RegimetricsError):
    """Window length is too short for the sample-covariance divisor."""


class InsufficientHistoryError(RegimetricsError):
    """Not enough preceding periods to fill a window."""
