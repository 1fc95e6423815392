"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class KhinlabError(Exception):
    pass


class DomainError(KhinlabError, ValueError):
    """An argument lies outside the domain of the operation."""


class BudgetExceededError(KhinlabError, RuntimeError):
    """A sign enumeration would exceed the configured bit budget."""

    def __init__(self, bits, budget):
        super().__init__(f"enumeration needs {bits} sign bits, budget is {budget}")
        self.bits = bits
        self.budget = budget


class DegenerateError(KhinlabError, ValueError):
    """A ratio was requested for an identically zero input."""
