"""Exception hierarchy shared by every hyperstab module."""


class HyperstabError(Exception):
    """Base class for all library errors."""


class DimensionError(HyperstabError, ValueError):
    """Operands act on a different number of qubit slots."""


class CapacityError(HyperstabError):
    """A size guard (qubits, assignments, dense memory) was exceeded."""


class NonHermitianError(HyperstabError, ValueError):
    """A Hermitian operator was required but the phase is +-i."""


class DomainError(HyperstabError, ValueError):
    """An argument lies outside the mathematical domain of a formula."""


class ParseError(HyperstabError, ValueError):
    """Malformed textual or JSON input; ``position`` is a character or item index."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ModelingError(HyperstabError):
    """The optical model reached an inconsistent state."""


class InvariantViolation(HyperstabError):
    """Two independent computations that must agree did not."""
