"""Exception hierarchy shared by the solvers and the CLI.

Each class carries the process exit code the CLI maps it to.
"""


class HeliotrackError(Exception):
    exit_code = 2


class ValidationError(HeliotrackError, ValueError):
    """Malformed input: bad step data, bad query, bad parameters."""


class EmptyInputError(ValidationError):
    pass


class NonCommensurateError(ValidationError):
    pass


class OutOfDomainError(ValidationError):
    pass


class LengthExceedsExtentError(ValidationError):
    pass


class InvalidQueryError(ValidationError):
    pass


class InvalidParamsError(ValidationError):
    pass


class NotUnimodalError(ValidationError):
    pass


class BudgetExceededError(ValidationError):
    pass


class NoFeasibleIntervalError(HeliotrackError):
    exit_code = 3


class InstanceTooLargeError(HeliotrackError):
    exit_code = 3


class InternalInconsistencyError(HeliotrackError, AssertionError):
    exit_code = 4
