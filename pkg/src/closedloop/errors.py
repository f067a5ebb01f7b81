"""Exception hierarchy shared by all modules."""


class ClosedLoopError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(ClosedLoopError, ValueError):
    """A physical parameter is outside its allowed domain."""


class ContractError(ClosedLoopError, ValueError):
    """An input violates the documented precondition of an operation."""


class StabilityError(ClosedLoopError):
    """The drift matrix has no (or only a marginal) steady state."""


class NumericalError(ClosedLoopError, ArithmeticError):
    """A numerical routine failed or produced an unphysical result."""


class ConfigError(ClosedLoopError, ValueError):
    """A run configuration could not be parsed or validated.

    ``problems`` holds every detected issue, not just the first one.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("\n".join(self.problems))
