"""Rational functions evaluated along arcs"""
import logging

from sympy.polys.domains import QQ

from geometry.arcs import poly_along_arc
from puiseux.exceptions import IndeterminateOrder
from puiseux.series import PuiseuxSeries, ps_invert, ps_mul
from regulous.conf import resolve

from .results import ArcLimit, LimitKind

logger = logging.getLogger(__name__)


def rational_along_arc(f, arc, order=None):
    """f(gamma(t)) as a series, or LimitKind.POLE_ARC when q vanishes along the arc"""
    order = resolve("ORDER", order)
    numerator = poly_along_arc(f.numerator, arc)
    denominator = poly_along_arc(f.denominator, arc)
    if not denominator.terms:
        if denominator.is_exact:
            return LimitKind.POLE_ARC
        raise IndeterminateOrder(f"denominator vanishes along the arc up to its truncation O(t^{denominator.precision})")
    if numerator.is_exact_zero:
        return PuiseuxSeries.zero()
    return ps_mul(numerator, ps_invert(denominator, order=order))


def arc_limit(f, arc, order=None):
    series = rational_along_arc(f, arc, order)
    if series is LimitKind.POLE_ARC:
        return ArcLimit(LimitKind.POLE_ARC)
    if not series.terms:
        if series.is_exact or series.precision > 0:
            return ArcLimit(LimitKind.FINITE, series.constant_term, series=series)
        raise IndeterminateOrder("limit hidden by truncation")
    exponent, lead = series.terms[0]
    if exponent < 0:
        return ArcLimit(LimitKind.DIVERGES, sign=lead.sign(), series=series)
    return ArcLimit(LimitKind.FINITE, series.constant_term, series=series)


def with_order_retry(compute, order=None, cap=None):
    """
    Call compute(order), doubling the order after IndeterminateOrder until
    the cap is passed; the last failure propagates.
    """
    order = QQ.convert(resolve("ORDER", order))
    cap = QQ.convert(resolve("ORDER_CAP", cap))
    while True:
        try:
            return compute(order)
        except IndeterminateOrder:
            if order * 2 > cap:
                raise
            logger.warning("truncation at order %s too short, retrying at %s", order, order * 2)
            order *= 2
