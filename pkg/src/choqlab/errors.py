"""Exception types raised across the package."""


class DimensionError(ValueError):
    """Array length or vector dimension does not match what was expected."""


class DomainError(ValueError):
    """A value was queried outside the half-line or interval it is defined on."""


class NegativeCutError(ValueError):
    """A symmetric clamp level was negative."""


class DomainKindError(ValueError):
    """An axiom was requested on an interval it is not defined for."""


class SamplerExhausted(RuntimeError):
    """Rejection sampling could not satisfy a closure condition."""


class BudgetExceeded(RuntimeError):
    """An exhaustive sweep would need more evaluations than allowed."""


class SingularSystem(ArithmeticError):
    """The interpolation system of an order simplex could not be solved."""
