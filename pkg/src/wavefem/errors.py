"""Exception hierarchy shared by the solver modules."""


class WavefemError(Exception):
    """Base class for all errors raised by wavefem."""


class InvalidArgumentError(WavefemError, ValueError):
    pass


class DegenerateElementError(WavefemError, ValueError):
    """Triangle area is zero (or numerically negligible) or negative."""


class ConfigurationError(WavefemError, KeyError):
    """A mesh region has no material assigned."""

    def __str__(self):  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class MaterialError(WavefemError, ValueError):
    """Material parameters would make the mass matrix indefinite."""


class DefinitenessError(WavefemError, ArithmeticError):
    """Right-hand matrix of a generalized eigenproblem is not positive definite."""


class ConvergenceError(WavefemError, ArithmeticError):
    pass


class UnsupportedScenarioError(WavefemError, ValueError):
    pass
