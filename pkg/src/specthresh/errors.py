"""Exception hierarchy shared across the package.

Exit-code mapping used by the CLI: usage errors exit 2 (argparse),
DataError exits 3, NumericalError exits 4.
"""


class SpecthreshError(Exception):
    """Base class for all package errors."""


class ParameterError(SpecthreshError, ValueError):
    """Invalid argument value (bad span, negative threshold, ...)."""


class ModelError(SpecthreshError, ValueError):
    """Invalid generative model (unstable AR part, bad noise spec, ...)."""


class DataError(SpecthreshError, ValueError):
    """Malformed input data or file."""


class NumericalError(SpecthreshError, ArithmeticError):
    """Numerical failure (singular system, non-convergent iteration)."""
