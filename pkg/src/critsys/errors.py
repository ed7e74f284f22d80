"""Exception types shared across the toolkit.

Two families matter for the CLI exit codes: ``DomainError`` (bad inputs or
out-of-regime requests, exit 1) and ``NumericalError`` (a computation that
ran but could not certify its result, exit 2).
"""


class CritsysError(Exception):
    code = "error"
    exit_code = 2

    def __init__(self, message, *, constraint=None, value=None):
        super().__init__(message)
        self.constraint = constraint
        self.value = value

    def to_json(self):
        out = {"error": self.code, "message": str(self)}
        if self.constraint is not None:
            out["constraint"] = self.constraint
        if self.value is not None:
            out["value"] = self.value
        return out


class DomainError(CritsysError):
    """A precondition on the inputs is violated."""

    code = "domain"
    exit_code = 1


class RegimeMismatchError(DomainError):
    """The requested quantity is not defined in the classified regime."""

    code = "regime-mismatch"


class NumericalError(CritsysError):
    code = "numerical"
    exit_code = 2


class NoSignChangeError(NumericalError):
    """Bracketing scan exhausted its grid without a sign change."""

    code = "no-sign-change"


class MonotonicityViolationError(NumericalError):
    """A sampled function is not monotone where the reduction requires it."""

    code = "monotonicity-violation"


class CounterexampleError(NumericalError):
    """A randomized check found a violating point (attached as ``value``)."""

    code = "counterexample"


class DivergenceError(NumericalError):
    """A fixed-point or Newton iteration left its certified regime."""

    code = "divergence"


class ResolutionError(NumericalError):
    """Grid too coarse or box too small for a trustworthy result."""

    code = "resolution"


class QuadratureError(NumericalError):
    """Box tails contribute too much to an integral estimate."""

    code = "quadrature"
