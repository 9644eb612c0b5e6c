"""Exception taxonomy shared across the package.

The split mirrors the CLI exit-code contract: parse problems (exit 2),
mathematical validation failures (exit 3), and dimension mismatches (exit 4).
"""


class GlobalnessError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(GlobalnessError):
    """Input file or serialized object could not be decoded."""


class ValidationError(GlobalnessError):
    """A mathematical invariant does not hold (non-unitary matrix,
    non-normalized state, incomplete measurement instrument, ...)."""


class UsageError(GlobalnessError):
    """The call itself is malformed: bad indices, empty cuts, bad config."""


class DimensionError(UsageError):
    """Operands have incompatible dimensions."""
