"""Exception types shared by the modules."""


class GbsError(Exception):
    """Base class for all errors raised by the package."""


class ParseError(GbsError):
    pass


class MoveError(GbsError):
    """A move was requested whose preconditions fail."""


class InvalidConfiguration(GbsError):
    pass


class DegenerateInput(GbsError):
    pass


class NotARoot(GbsError):
    pass


class TwinRoot(GbsError):
    pass


class NotInSubgroup(GbsError):
    pass


class NotBasisElement(GbsError):
    pass


class NotStrictlyPositive(GbsError):
    pass


class NoPositiveVector(GbsError):
    pass


class DegenerateAngle(GbsError):
    pass


class IncompatibleSubgroups(GbsError):
    pass


class SearchLimit(GbsError):
    """An iteration or state cap was hit."""


class UnsupportedGraph(GbsError):
    """The graph is outside the one-vertex, two-edge configuration setting."""


class FrontierOverflow(SearchLimit):
    """The breadth-first search visited more states than allowed."""


class ZeroLabel(GbsError, ValueError):
    """Zero has no exponent vector."""


class NotInPositiveCone(GbsError, ValueError):
    pass
