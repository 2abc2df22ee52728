"""Exception types shared across the package."""


class HFRError(Exception):
    """Base class for all package errors."""


class BraidInputError(HFRError, ValueError):
    """Malformed braid text or a braid outside the supported class."""


class DisconnectedSurfaceError(BraidInputError):
    """Seifert surface of the closure is disconnected (a generator index is missing)."""


class BudgetExceededError(HFRError, RuntimeError):
    """A configured work cap (generator count or skein recursion) was hit."""


class OracleMismatchError(HFRError, AssertionError):
    """The diagram pipeline disagrees with an independent oracle."""
