"""Exception types shared across the package."""


class LmpError(Exception):
    """Base class for all lmpoly errors."""


class ModeError(LmpError):
    """An operation was asked to run in a numeric mode it cannot honour."""


class NotPositiveStable(LmpError):
    """The parameter matrix has an eigenvalue with Re(w) <= 0."""

    def __init__(self, eigenvalue):
        self.eigenvalue = eigenvalue
        super().__init__(f"parameter is not positive stable: eigenvalue {eigenvalue} has Re <= 0")


class Defective(LmpError):
    """The parameter matrix is (numerically) non-diagonalizable."""

    def __init__(self, condition, detail=""):
        self.condition = condition
        msg = f"eigenvector matrix condition {condition:.3g} exceeds the diagonalizability threshold"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class PoleError(LmpError):
    """log-gamma requested at a nonpositive integer."""


class DegreeCapExceeded(LmpError):
    """A formal expression would exceed the configured degree cap."""


class DivergenceRegion(LmpError):
    """A generating-function evaluation was requested outside its convergence region."""


class ZeroPhi0(LmpError):
    """phi_0(y) = 0, so the reciprocal sequence does not exist."""


class CostGuard(LmpError):
    """Refusing an operation whose cost guard was exceeded."""


class PrecisionInsufficient(LmpError):
    """Root residuals did not meet the bound at the requested precision."""

    def __init__(self, max_residual, bits):
        self.max_residual = max_residual
        self.bits = bits
        super().__init__(f"max root residual {max_residual:.3g} exceeds bound at {bits} bits")


class DegenerateLeadingCoefficient(LmpError):
    """The polynomial handed to the root finder has a zero leading coefficient."""


class NonpositiveArgument(LmpError):
    """q-gamma requested at a nonpositive argument."""
