"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid configuration, e.g. a connection range outside the lens condition."""


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured feasibility budget."""

    def __init__(self, what: str, size: int, budget: int):
        self.what = what
        self.size = size
        self.budget = budget
        super().__init__(f"{what}: {size} items exceeds the feasibility budget of {budget}"
                         f" (raise --budget to allow it)")
