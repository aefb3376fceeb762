"""Exception types shared across the package."""


class CircOrderError(Exception):
    """Base class for all library errors."""


class RepresentationError(CircOrderError, ValueError):
    """An element is not in the expected normal form, or a callback broke its contract."""


class PreconditionError(CircOrderError, ValueError):
    """A mathematical hypothesis failed on the checked region.

    ``witness`` carries the offending data (a pair, triple, ...) when one was found.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotInjectiveError(PreconditionError):
    pass


class CofinalityError(CircOrderError):
    """A floor search for the cofinal element exceeded its bound."""


class IndeterminateError(CircOrderError):
    """A windowed existence search found no witness either way."""


class SizeGuardError(CircOrderError, ValueError):
    pass


class NonterminationError(CircOrderError, RuntimeError):
    pass
