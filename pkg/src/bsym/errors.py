"""Exception types shared across the package."""


class BsymError(Exception):
    """Base class for all package-specific errors."""


class ExprSyntaxError(BsymError):
    """Malformed coefficient-expression source; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class EvalError(BsymError):
    """Expression evaluation hit a division by zero or a non-finite value."""


class ZeroDenominator(BsymError):
    """Rational exponent with denominator zero."""


class DomainError(BsymError):
    """Input outside the mathematical domain of an operation."""


class NoConvergence(BsymError):
    """Adaptive integration exhausted its step-refinement budget."""


class ParityViolation(BsymError):
    """Coefficient parities do not satisfy an identity's preconditions."""


class OutsideValidity(BsymError):
    """Closed-form evaluation requested outside the real-valued interval."""


class CaseNotApplicable(BsymError):
    """Problem does not satisfy a symmetry case's hypotheses."""


class EmptyDomain(BsymError):
    """Two solutions share no interval on which to compare them."""


class StepFailure(BsymError):
    """Direct ODE integration could not continue (step size underflow)."""
