"""Exception hierarchy shared by all modules."""


class SoftDiscError(Exception):
    """Base class for all errors raised by this package."""


class ConfigFormatError(SoftDiscError, ValueError):
    """A configuration file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(SoftDiscError, ValueError):
    """A configuration violates a structural invariant (e.g. duplicate points)."""


class DomainError(SoftDiscError, ValueError):
    """An argument lies outside the domain of an operation."""


class InfeasibleConfiguration(SoftDiscError):
    """Two points are closer than the hard core allows; the energy is +inf."""

    def __init__(self, pair: tuple[int, int], distance: float):
        self.pair = pair
        self.distance = distance
        super().__init__(
            f"points {pair[0]} and {pair[1]} are at distance {distance:.12g} < 1"
        )


class PreconditionError(SoftDiscError, ValueError):
    """A hypothesis required by a check does not hold."""

    def __init__(self, hypothesis: str, message: str = ""):
        self.hypothesis = hypothesis
        super().__init__(f"{hypothesis}: {message}" if message else hypothesis)


class CapacityError(SoftDiscError, ValueError):
    """The requested size exceeds what the exhaustive enumerator supports."""


class SaturationError(SoftDiscError):
    """The random sampler could not place another hard disc in the box."""


class InvariantViolation(SoftDiscError):
    """An internal correctness alarm, e.g. a search beating the canonical energy."""
