from exact_arith.exceptions import ExactZeroDivision, RegulousError


class TowerDepthExceeded(RegulousError):
    def __init__(self, depth, cap):
        self.depth = depth
        self.cap = cap
        super().__init__(f"coefficient field needs {depth} extensions, the cap is {cap}")


class IndeterminateOrder(RegulousError):
    """The truncation is too short to decide an order; retry with a higher one"""


class SeriesZeroDivision(ExactZeroDivision):
    pass


class EvaluationPointError(RegulousError, ValueError):
    pass
