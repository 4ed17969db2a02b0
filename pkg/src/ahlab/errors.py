"""Exception types shared across the package."""


class NotPIntegral(ArithmeticError):
    """A rational number whose denominator is divisible by the prime.

    Kept apart from usage errors: hitting this on a quantity that should be
    p-integral is a mathematical finding, not a programming mistake.
    """

    def __init__(self, value, p, index=None):
        super().__init__(f"{value} is not {p}-integral")
        self.value = value
        self.p = p
        self.index = index


class FieldMismatch(ValueError):
    pass


class NotInvertible(ZeroDivisionError):
    pass


class TableTooShallow(ValueError):
    def __init__(self, needed, have):
        super().__init__(f"table depth {have} too small, need N >= {needed}")
        self.needed = needed
        self.have = have


class OutOfRange(ValueError):
    """Input outside the range where a formula or theorem is stated."""


class BudgetExceeded(RuntimeError):
    pass
