"""Exception types shared across the package."""


class NilfactorError(Exception):
    """Base class for every error raised by nilfactor."""


class InvalidOrder(NilfactorError, ValueError):
    pass


class GroupTooLarge(NilfactorError, ValueError):
    pass


class InvalidPermutation(NilfactorError, ValueError):
    pass


class NotAGroup(NilfactorError, ValueError):
    """Raised by table validation; ``witness`` holds the failing row or triple."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotNilpotent(NilfactorError, ValueError):
    pass


class ChainStepFailed(NilfactorError, RuntimeError):
    pass


class SizesMismatch(NilfactorError, ValueError):
    pass


class SizeTooSmall(NilfactorError, ValueError):
    pass


class KTooSmall(NilfactorError, ValueError):
    pass


class NormalizerTrivial(NilfactorError, RuntimeError):
    pass


class ParseError(NilfactorError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
