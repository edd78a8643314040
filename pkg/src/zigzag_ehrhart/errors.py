class CapacityError(ValueError):
    """Input exceeds the size bound of an exhaustive or DP routine."""


class IntegrityError(ArithmeticError):
    """An internal consistency condition that must hold was violated."""
