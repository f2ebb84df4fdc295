"""Exception hierarchy shared by all modules."""


class WellError(Exception):
    """Base class for every error raised by this package."""


class GeometryError(WellError, ValueError):
    """Well width or wall heights are invalid."""


class RangeError(WellError, ValueError):
    """An element (or a requested barrier) does not fit inside the well."""


class OverlapError(WellError, ValueError):
    """Two interior elements intersect on a set of positive length."""


class DomainError(WellError, ValueError):
    """A function was evaluated outside its admissible argument range."""


class MismatchError(WellError, ValueError):
    """Transfer coefficients evaluated at different wavenumbers were combined."""


class InfiniteWallError(WellError, ValueError):
    """A finite-wall routine received a well with infinite walls."""


class FiniteWallError(WellError, ValueError):
    """An infinite-wall routine received a well with finite walls."""


class ConvergenceError(WellError, RuntimeError):
    """Bisection did not reach the requested tolerance within the iteration cap."""


class GridError(WellError, ValueError):
    """Finite-difference grid cannot resolve the requested number of levels."""


class SchemaError(WellError, ValueError):
    """A JSON document does not match the expected layout."""
