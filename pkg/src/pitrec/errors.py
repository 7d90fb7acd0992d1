"""Exception types shared across the package."""


class PitrecError(Exception):
    """Base class for every domain error raised by pitrec."""


class BaseOutOfRange(PitrecError):
    """Pit base outside the supported range [2, 2**16]."""


class AlphabetTooSmall(PitrecError):
    """Alphabet needs at least two symbols."""


class AlphabetTooLarge(PitrecError):
    """Alphabet size exceeds the codec's 32-bit bound."""


class CapacityExceeded(PitrecError):
    """More codewords requested than exist under the length cap."""


class SymbolOutOfRange(PitrecError):
    """Symbol value not in [0, l_A)."""


class PitOutOfRange(PitrecError):
    """Digit value not in [0, p)."""


class InstanceTooLarge(PitrecError):
    """Problem instance too big for the exhaustive search."""


class PassesOutOfRange(PitrecError):
    """Pass count must be in [1, 255]."""


class CorruptContainer(PitrecError):
    """Container bytes or fields violate the PITR format."""
