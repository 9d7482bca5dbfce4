class CartmatchError(Exception):
    """Base class for library errors."""


class ContractViolation(CartmatchError, IndexError):
    """An index or precondition outside the documented range."""


class MalformedInput(CartmatchError, ValueError):
    """Input that cannot encode the requested structure."""


class InvalidPattern(CartmatchError, ValueError):
    """Empty pattern or empty pattern set."""


class CorruptIndex(CartmatchError, ValueError):
    """Serialized suffix tree index failed revalidation."""
