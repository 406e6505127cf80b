"""Exception hierarchy shared across the package."""


class HurwitzError(Exception):
    """Base class for all errors raised by trophurwitz."""


class InvalidInput(HurwitzError, ValueError):
    """Malformed partitions, mismatched degrees, inconsistent parities."""


class SignLengthMismatch(InvalidInput):
    """Sign vector length differs from the number of simple branch points."""


class DegreeCeilingExceeded(HurwitzError):
    """The brute-force oracle refuses degrees above its configured ceiling."""


class UnsupportedConfiguration(HurwitzError):
    """A local configuration lies outside the tabulated local covers."""
