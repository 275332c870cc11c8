"""Exception hierarchy shared by the enumeration engine and the CLI."""


class BraidGrowthError(Exception):
    """Base class for all package errors."""


class CoordinateOverflowError(BraidGrowthError, OverflowError):
    """A Dynnikov coordinate left the signed 64-bit range."""

    def __init__(self, position, message=None):
        self.position = position
        super().__init__(message or f"Dynnikov coordinate overflow at word position {position}")


class OmegaOverflowError(BraidGrowthError, OverflowError):
    """A geodesic count no longer fits in an unsigned 64-bit integer."""


class StoreError(BraidGrowthError):
    """A representative-set file or run manifest is missing, corrupt or inconsistent."""

    def __init__(self, path, reason):
        self.path = path
        super().__init__(f"{path}: {reason}")


class MemoryCapError(BraidGrowthError):
    """A single template task would exceed the configured memory budget."""


class InsufficientCoefficientsError(BraidGrowthError, ValueError):
    """Not enough series coefficients for the requested rational fit."""
