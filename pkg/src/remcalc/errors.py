"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` so the command line
front end can map it to an exit status without string matching.
"""


class RemcalcError(Exception):
    code = "error"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class InputError(RemcalcError, ValueError):
    """Malformed or inconsistent input (exit status 1)."""

    code = "invalid_input"


class NumericalError(RemcalcError, ArithmeticError):
    """A computation could not meet its accuracy contract (exit status 2)."""

    code = "numerical_failure"


class QuadratureError(NumericalError):
    code = "quadrature_failed"

    def __init__(self, message, estimate, error_bound):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound
