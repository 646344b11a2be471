"""Exception hierarchy.

Input errors (malformed data) and domain errors (a construction that does not
apply to the given object) are kept apart so the CLI can map them to distinct
exit codes.
"""


class NestoconeError(Exception):
    """Base class for all errors raised by this package."""


class InputError(NestoconeError, ValueError):
    """Malformed or out-of-range input."""


class InvalidTubeError(InputError):
    pass


class BuildingSetError(InputError):
    """The building-set axioms fail; ``pair`` names the offending blocks."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class DomainError(NestoconeError):
    """The requested construction does not apply to this object."""


class NotIntervalError(DomainError):
    pass


class NotSimplicialError(DomainError):
    pass


class NotInteriorError(DomainError):
    """The height vector does not lie in the open type cone."""


class InvariantError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
