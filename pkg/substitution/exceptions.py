from exact_arith.exceptions import RegulousError


class DegenerateRelation(RegulousError):
    """Every coefficient of the relation vanishes along the arc or at the point"""


class DivergentProbe(RegulousError):
    pass
