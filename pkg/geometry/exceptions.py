from exact_arith.exceptions import RegulousError


class NotAHypersurface(RegulousError):
    pass


class PlaneContainedInVariety(RegulousError):
    """The slice plane lies inside the variety; it yields no branch relation"""


class PointNotOnVariety(RegulousError):
    pass


class InvalidArc(RegulousError, ValueError):
    pass
