"""Exception hierarchy shared by all modules."""


class GraphCodeError(Exception):
    """Base class for every error raised by this package."""


class InvalidSpecError(GraphCodeError, ValueError):
    """A code parameter set that the construction does not support."""


class ModulusMismatchError(GraphCodeError, ValueError):
    pass


class ErasedEdgeError(GraphCodeError, LookupError):
    """Raised on a read of an edge whose label was erased."""


class TooManyFailuresError(GraphCodeError, ValueError):
    pass


class InconsistentInputError(GraphCodeError):
    """Surviving labels are not consistent with any codeword."""


class UndecodablePatternError(GraphCodeError):
    """The restricted parity-check system is rank deficient."""


class DimensionTooLargeError(GraphCodeError, ValueError):
    pass


class GraphFormatError(GraphCodeError, ValueError):
    pass
