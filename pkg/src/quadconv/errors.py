"""Exception types shared across the package."""


class QuadconvError(Exception):
    """Base class for all quadconv errors."""


class InvalidActivation(QuadconvError, ValueError):
    """Activation coefficients violate the validity conditions."""


class DimensionMismatch(QuadconvError, ValueError):
    """An input has a shape incompatible with the declared geometry."""


class NonFiniteInput(QuadconvError, ValueError):
    """NaN or infinity where finite values are required."""


class NegativeRegularizer(QuadconvError, ValueError):
    """Ridge weight must be nonnegative."""


class MalformedModelFile(QuadconvError, ValueError):
    """Model file cannot be parsed or violates the model invariants."""


class ParseError(QuadconvError, ValueError):
    """CSV content cannot be parsed; message carries row/column."""


class MissingColumn(QuadconvError, ValueError):
    """A requested column is absent from a CSV header."""


class InsufficientData(QuadconvError, ValueError):
    """Not enough samples for the requested windowing or split."""


class ChannelMissing(QuadconvError, ValueError):
    """A named channel is absent from a time series."""
