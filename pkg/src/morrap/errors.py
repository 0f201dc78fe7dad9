"""Exception hierarchy shared by the whole package.

The CLI maps these onto process exit codes, so library code should raise
the most specific class that applies.
"""


class MorrapError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(MorrapError, ValueError):
    """Invalid input: bad parameters, malformed config, broken invariants."""


class InfeasibleError(MorrapError):
    """The feasible design set (possibly after extra restrictions) is empty."""


class NumericalError(MorrapError):
    """Degenerate numerics: zero membership mass, zero normalization range, etc."""
