"""Exception types shared across the package."""


class FastDcorError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(FastDcorError, ValueError):
    """Malformed input: wrong shape, non-finite values, mismatched sizes."""


class DegenerateDataError(FastDcorError, ValueError):
    """Data carries no usable variation (constant sample, empty spectrum)."""


class SmallSampleError(FastDcorError, ValueError):
    """Sample too small for the requested estimator."""


class UnsupportedPathError(FastDcorError, ValueError):
    """The fast 1D path does not apply to the given input."""


class NumericalError(FastDcorError, RuntimeError):
    """A numerical routine failed or produced inconsistent results."""


class ParseError(FastDcorError, ValueError):
    """An input file could not be parsed."""
