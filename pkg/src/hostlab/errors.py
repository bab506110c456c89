"""Exception hierarchy shared by every hostlab module."""


class HostError(Exception):
    """Base class for all hostlab errors."""


class BoundExceeded(HostError):
    """A size or enumeration bound was hit before the computation finished."""


class CodeOverflow(HostError, OverflowError):
    """An Ackermann code is outside the representable range."""


class NotAFunction(HostError, ValueError):
    """A set is not a graph of Kuratowski pairs with unique first coordinates."""


class FormulaSyntaxError(HostError, ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class EvaluationError(HostError):
    """Satisfaction could not be decided (unbound variable, uninterpreted constant)."""


class BudgetExceeded(HostError):
    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"evaluation budget of {budget} nodes exceeded")


class ConfigError(HostError, ValueError):
    """Invalid tier configuration, category table, or similar input."""


class CaptureError(HostError, ValueError):
    """Relativizing would let a quantifier capture the bounding term."""
