"""
Exact real algebraic numbers.

A RealAlgebraic is a square-free polynomial over QQ together with an open
rational interval holding exactly one of its roots; no root sits on an
endpoint. Rational values are always stored with a degree one polynomial.
Refinement returns new values, so instances never change.
"""
import logging
from dataclasses import dataclass
from functools import total_ordering

from sympy.polys.domains import QQ

from . import polys
from .exceptions import ExactZeroDivision, ZeroPolynomialError
from .polys import T, UNIVARIATE

logger = logging.getLogger(__name__)

ALG_OPERATIONS = ("add", "mul")


@total_ordering
@dataclass(frozen=True, eq=False)
class RealAlgebraic:
    minimal_poly: object
    lo: object
    hi: object

    # Construction

    @classmethod
    def from_rational(cls, value):
        value = QQ.convert(value)
        return cls(T - value, value - 1, value + 1)

    @classmethod
    def from_root(cls, poly, lo, hi):
        """
        The root of a square-free poly isolated by (lo, hi). The stored
        polynomial is the irreducible factor carrying that root, so rational
        roots come back in canonical degree one form.
        """
        poly = polys.as_univariate(poly)
        for factor, _ in poly.factor_list()[1]:
            if polys.degree(factor) > 0 and polys.count_roots(factor, lo, hi) == 1:
                poly = factor
                break
        poly = poly.monic()
        if polys.degree(poly) == 1:
            return cls.from_rational(-polys.coefficient(poly, 0))
        return cls(poly, lo, hi)

    # Queries

    @property
    def is_rational(self):
        return polys.degree(self.minimal_poly) == 1

    @property
    def rational(self):
        """The value as a QQ element, or None when irrational"""
        if not self.is_rational:
            return None
        return -polys.coefficient(self.minimal_poly, 0)

    def bounds(self):
        """Closed rational enclosure; a single point for rationals"""
        if self.is_rational:
            return self.rational, self.rational
        return self.lo, self.hi

    @property
    def width(self):
        low, high = self.bounds()
        return high - low

    def refine(self):
        """Same number with the isolating interval halved"""
        if self.is_rational:
            return self
        lo, hi = polys.bisect_root(self.minimal_poly, self.lo, self.hi)
        if lo == hi:
            return RealAlgebraic.from_rational(lo)
        return RealAlgebraic(self.minimal_poly, lo, hi)

    def refined(self, width):
        value = self
        while value.width > width:
            value = value.refine()
        return value

    def sign(self):
        return alg_sign(self)

    # Comparisons

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self is other:
            return True
        if self.is_rational or other.is_rational:
            return self.rational == other.rational
        common = self.minimal_poly.gcd(other.minimal_poly)
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if polys.degree(common) <= 0 or lo >= hi:
            return False
        return polys.count_roots(common, lo, hi) >= 1

    def __hash__(self):
        return hash(self.rational) if self.is_rational else hash("irrational")

    def __lt__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return alg_compare(self, other) < 0

    # Arithmetic

    def __neg__(self):
        return alg_neg(self)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return alg_op(self, other, "add")

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return alg_op(self, alg_neg(other), "add")

    def __rsub__(self, other):
        return alg_neg(self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return alg_op(self, other, "mul")

    __rmul__ = __mul__

    def inverse(self):
        return alg_inverse(self)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return alg_op(self, alg_inverse(other), "mul")

    def __str__(self):
        if self.is_rational:
            return polys.format_rational(self.rational)
        return (
            f"root({polys.format_polynomial(self.minimal_poly)}, "
            f"[{polys.format_rational(self.lo)}, {polys.format_rational(self.hi)}])"
        )

    def __repr__(self):
        return f"RealAlgebraic({self})"


def _coerce(value):
    if isinstance(value, RealAlgebraic):
        return value
    try:
        return RealAlgebraic.from_rational(value)
    except Exception:
        return None


def real_roots(p):
    """Real roots of p in increasing order, paired with their multiplicities"""
    p = polys.as_univariate(p)
    if not p:
        raise ZeroPolynomialError("the zero polynomial has every number as a root")
    _, factors = p.sqf_list()
    roots = []
    for factor, multiplicity in factors:
        for lo, hi in polys.isolate_real_roots(factor):
            roots.append((RealAlgebraic.from_root(factor, lo, hi), multiplicity))
    roots.sort(key=lambda pair: _SortKey(pair[0]))
    return roots


class _SortKey:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __lt__(self, other):
        return alg_compare(self.value, other.value) < 0


def alg_sign(a):
    """Sign of a real algebraic number, by refinement away from zero"""
    if a.is_rational:
        return polys.rational_sign(a.rational)
    while True:
        if a.lo >= 0:
            return 1
        if a.hi <= 0:
            return -1
        a = a.refine()
        if a.is_rational:
            return polys.rational_sign(a.rational)


def alg_compare(a, b):
    if a == b:
        return 0
    if a.is_rational and b.is_rational:
        return polys.rational_sign(a.rational - b.rational)
    while True:
        a_lo, a_hi = a.bounds()
        b_lo, b_hi = b.bounds()
        if a_hi <= b_lo:
            return -1
        if b_hi <= a_lo:
            return 1
        a, b = a.refine(), b.refine()


def alg_neg(a):
    if a.is_rational:
        return RealAlgebraic.from_rational(-a.rational)
    return RealAlgebraic(polys.reflect(a.minimal_poly).monic(), -a.hi, -a.lo)


def alg_inverse(a):
    if a.is_rational:
        if a.rational == 0:
            raise ExactZeroDivision("inverse of zero")
        return RealAlgebraic.from_rational(1 / a.rational)
    reversed_poly = polys.reverse(a.minimal_poly).monic()
    while a.lo < 0 < a.hi:
        a = a.refine()
    if a.lo > 0:
        hi = 1 / a.lo
    elif a.lo == 0:
        hi = polys.root_bound(reversed_poly)
    else:
        hi = 1 / a.lo
    if a.hi < 0:
        lo = 1 / a.hi
    elif a.hi == 0:
        lo = -polys.root_bound(reversed_poly)
    else:
        lo = 1 / a.hi
    return RealAlgebraic.from_root(reversed_poly, lo, hi)


def alg_op(a, b, op):
    """Exact sum or product of two real algebraic numbers"""
    if op not in ALG_OPERATIONS:
        raise ValueError(f"unknown algebraic operation {op!r}")
    if a.is_rational and b.is_rational:
        if op == "add":
            return RealAlgebraic.from_rational(a.rational + b.rational)
        return RealAlgebraic.from_rational(a.rational * b.rational)
    if a.is_rational:
        a, b = b, a
    if b.is_rational:
        r = b.rational
        if op == "add":
            if r == 0:
                return a
            return RealAlgebraic(polys.shift(a.minimal_poly, r).monic(), a.lo + r, a.hi + r)
        if r == 0:
            return RealAlgebraic.from_rational(QQ.zero)
        lo, hi = sorted((a.lo * r, a.hi * r))
        return RealAlgebraic(polys.dilate(a.minimal_poly, r).monic(), lo, hi)
    if op == "add":
        poly = polys.sum_polynomial(a.minimal_poly, b.minimal_poly)
        combine = polys.interval_sum
    else:
        poly = polys.product_polynomial(a.minimal_poly, b.minimal_poly)
        combine = polys.interval_product
    return pin_root(poly.sqf_part(), (a, b), combine)


def pin_root(poly, operands, combine):
    """
    Isolate the root of poly whose value is combine() of the operands, by
    refining the operands until the combined enclosure isolates it.
    """
    while True:
        lo, hi = combine(*(x.bounds() for x in operands))
        if (
            lo < hi
            and polys.value_at(poly, lo) != 0
            and polys.value_at(poly, hi) != 0
            and polys.count_roots(poly, lo, hi) == 1
        ):
            return RealAlgebraic.from_root(poly, lo, hi)
        operands = tuple(x.refine() for x in operands)


def zero():
    return RealAlgebraic.from_rational(QQ.zero)


def one():
    return RealAlgebraic.from_rational(QQ.one)


def sqrt(value):
    """Positive square root of a nonnegative rational"""
    value = QQ.convert(value)
    if value == 0:
        return zero()
    poly = UNIVARIATE.from_dict({(2,): QQ.one, (0,): -value})
    return RealAlgebraic.from_root(poly, QQ.zero, max(value, QQ.one) + 1)
