"""Exception hierarchy shared across the index modules."""


class RIndexError(Exception):
    """Base class for every error raised by this package."""


class EmptyInput(RIndexError):
    pass


class ByteNotInAlphabet(RIndexError):
    def __init__(self, byte: int, offset: int):
        super().__init__(f"byte {byte!r} at offset {offset} is not in the configured alphabet")
        self.byte = byte
        self.offset = offset


class OutOfBounds(RIndexError, IndexError):
    pass


class NoSuchOccurrence(RIndexError):
    pass


class NotSingletonRun(RIndexError):
    pass


class HolePosition(RIndexError):
    pass


class SentinelReuse(RIndexError):
    pass


class MissingSaNext(RIndexError):
    pass


class InconsistentEffects(RIndexError):
    pass


class NoPredecessor(RIndexError):
    pass


class Finalized(RIndexError):
    pass


class MissingSentinel(RIndexError):
    pass


class UnterminatedText(RIndexError):
    pass


class SymbolAbsent(RIndexError):
    pass


class SymbolAbsentFromText(RIndexError):
    pass


class IndexFormatError(RIndexError):
    """Raised by the loader on a malformed or foreign index file."""
