"""Rational enclosures of truncated series at a positive point"""
from sympy.polys.domains import QQ

from exact_arith.polys import interval_product

from .exceptions import EvaluationPointError


def root_enclosure(value, q, width):
    """[lo, hi] around the positive q-th root of a positive rational, hi - lo <= width"""
    lo, hi = QQ.zero, max(QQ.one, value)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if mid**q <= value:
            lo = mid
        else:
            hi = mid
    return lo, hi


def power_enclosure(u, exponent, width):
    p, q = int(QQ.numer(exponent)), int(QQ.denom(exponent))
    base = u**p
    if q == 1:
        return base, base
    return root_enclosure(base, q, width)


def ps_eval_numeric(a, u, precision):
    """
    Interval of width at most precision holding the truncated sum of a at
    t = u. The truncation tail is not accounted for.
    """
    u, precision = QQ.convert(u), QQ.convert(precision)
    if u <= 0:
        raise EvaluationPointError("series are evaluated at t > 0 only")
    if precision <= 0:
        raise ValueError("precision must be positive")
    if not a.terms:
        return QQ.zero, QQ.zero
    budget = precision / len(a.terms)
    lo_sum, hi_sum = QQ.zero, QQ.zero
    for exponent, coeff in a.terms:
        value = coeff.value
        width = budget
        while True:
            lo, hi = interval_product(value.bounds(), power_enclosure(u, exponent, width))
            if hi - lo <= budget:
                break
            value = value.refine()
            width /= 2
        lo_sum, hi_sum = lo_sum + lo, hi_sum + hi
    return lo_sum, hi_sum
