"""Exception hierarchy shared by every cellkit module."""


class CellkitError(Exception):
    """Base class for all cellkit errors."""


class DuplicateValue(CellkitError, ValueError):
    pass


class OutOfRange(CellkitError, ValueError):
    pass


class RankMismatch(CellkitError, ValueError):
    pass


class WindowOutOfRange(CellkitError, IndexError):
    pass


class ParamOutOfRange(CellkitError, ValueError):
    pass


class ShapeMismatch(CellkitError, ValueError):
    pass


class SizeMismatch(CellkitError, ValueError):
    pass


class NotFullyCommutative(CellkitError, ValueError):
    pass


class NotInvolution(CellkitError, ValueError):
    pass


class CacheNotFilled(CellkitError, RuntimeError):
    pass


class BudgetExceeded(CellkitError, RuntimeError):
    """Raised when a computation would need a rank above the configured budget."""


class VersionMismatch(CellkitError, ValueError):
    pass


class RouteDisagreement(CellkitError, RuntimeError):
    """Two classification routes returned different verdicts for the same input."""


class ChecksumMismatch(CellkitError, RuntimeError):
    """A shipped data file does not match its recorded checksum."""
