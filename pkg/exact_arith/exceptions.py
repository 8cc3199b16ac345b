class RegulousError(Exception):
    """Base class for every error raised by the engine"""


class ArityMismatch(RegulousError):
    def __init__(self, expected, got, what="polynomial"):
        self.expected = expected
        self.got = got
        super().__init__(f"{what} has arity {got}, expected {expected}")


class ZeroPolynomialError(RegulousError):
    pass


class ExactZeroDivision(RegulousError, ZeroDivisionError):
    pass
