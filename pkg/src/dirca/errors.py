"""Exceptions shared across the package."""


class DircaError(Exception):
    """Base class for all package errors."""


class AlphabetMismatch(DircaError):
    """Two values over different alphabets were combined."""


class RuleFormatError(DircaError):
    """A rule file could not be parsed."""


class CapExceeded(DircaError):
    """A configured resource cap was hit before the computation finished."""


class TableTooLarge(CapExceeded):
    """An exact lookup table or DP state space would exceed the cap."""


class ConeTooWide(CapExceeded):
    """A dependency-cone enumeration exceeded the width or set-size cap."""
