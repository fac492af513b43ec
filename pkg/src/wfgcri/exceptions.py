"""Exception hierarchy shared by every module of the package."""


class WfgcriError(Exception):
    """Base class; ``code`` is the stable machine-readable identifier."""

    code = "wfgcri_error"


class DomainError(WfgcriError, ValueError):
    code = "domain_error"


class ConditioningError(DomainError):
    """Survival function vanishes at the inspection time of a dynamic measure."""

    code = "conditioning_error"


class IntegrationError(WfgcriError, ArithmeticError):
    """Quadrature did not reach the requested tolerance.

    The diagnostics (value reached, error estimate, subdivisions used, upper
    limit) are kept as attributes so callers can report them.
    """

    code = "integration_failure"

    def __init__(self, message, *, value=None, err_estimate=None,
                 subdivisions=None, upper=None):
        super().__init__(message)
        self.value = value
        self.err_estimate = err_estimate
        self.subdivisions = subdivisions
        self.upper = upper

    def diagnostics(self):
        return {
            "value": self.value,
            "err_estimate": self.err_estimate,
            "subdivisions": self.subdivisions,
            "upper_truncation": self.upper,
        }


class DivergenceError(IntegrationError):
    """The integral is infinite (non-decaying tail or infinite integrand)."""

    code = "divergence"
