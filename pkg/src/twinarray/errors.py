"""Exception hierarchy shared by the sorting, generation and benchmark modules."""


class TwinArrayError(Exception):
    """Base class for every error raised by this package."""


class InvalidElement(TwinArrayError, ValueError):
    """An input value is negative or does not fit in an unsigned 64-bit word."""


class EmptyInput(TwinArrayError, ValueError):
    pass


class RangeGuardExceeded(TwinArrayError, MemoryError):
    """Allocating ``k + 1`` value-indexed slots would exceed the configured cap."""

    def __init__(self, slots: int, max_slots: int):
        super().__init__(f"range guard: {slots} slots requested, cap is {max_slots}")
        self.slots = slots
        self.max_slots = max_slots


class PathMisuse(TwinArrayError, RuntimeError):
    """The distinct reconstruction was requested for an input with duplicates."""


class ZeroBound(TwinArrayError, ValueError):
    pass


class SpecInvalid(TwinArrayError, ValueError):
    """A dataset specification violates its invariants."""


class MalformedFile(TwinArrayError, ValueError):
    """A TAS1 dataset file failed structural validation."""


class DegenerateInput(TwinArrayError, ValueError):
    """A statistic is undefined for the given data (zero variance, too few points)."""
