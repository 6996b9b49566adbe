"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: usage problems exit 1, data
validation failures exit 2, numerical failures exit 3.
"""


class SolarcastError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(SolarcastError):
    """The caller asked for something the tool cannot do (bad flag
    combination, unknown model name, horizon the model was never
    fitted for)."""


class DataValidationError(SolarcastError):
    """Input data or arguments violate a documented contract
    (malformed CSV row, irregular sampling grid, shape mismatch,
    too-short series)."""


class NumericalError(SolarcastError):
    """A numerical procedure failed: rank-deficient least squares,
    diverging training loss, singular recursion step."""
