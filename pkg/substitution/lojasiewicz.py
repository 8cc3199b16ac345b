"""
Arc probe for the exponent N in f^N = rho*g, rho the squared distance to
the center: along an arc, (f - f(x0))^N is divisible by rho only when
N * ord(f - f(x0)) >= ord(rho).
"""
import logging

from exact_arith.polys import ceil_rational
from geometry.exceptions import InvalidArc
from geometry.varieties import format_point, make_point
from puiseux.exceptions import IndeterminateOrder
from puiseux.series import PuiseuxSeries, ps_add, ps_mul, ps_ord, ps_sub

from .along import rational_along_arc
from .exceptions import DivergentProbe
from .extension import extend_along_pole_arc
from .results import LimitKind, LojEntry, LojReport

logger = logging.getLogger(__name__)


def squared_distance(arc, center):
    total = PuiseuxSeries.zero()
    for component, x in zip(arc.components, center):
        offset = ps_sub(component, PuiseuxSeries.constant(x))
        total = ps_add(total, ps_mul(offset, offset))
    return total


def _candidates(f, arc, variety, order):
    series = rational_along_arc(f, arc, order)
    if series is not LimitKind.POLE_ARC:
        return [series]
    if variety is None:
        raise DivergentProbe(f"f is undefined along {arc.label()}")
    extension = extend_along_pole_arc(f, variety, arc, order=order)
    if not extension.candidates:
        raise DivergentProbe(f"f has no continuous candidate along {arc.label()}")
    return list(extension.candidates)


def lojasiewicz_probe(f, point, arcs, variety=None, order=None):
    center = make_point(point)
    per_arc = []
    for arc in arcs:
        if arc.arity != len(center) or any(o != x for o, x in zip(arc.origin, center)):
            raise InvalidArc(f"arc {arc.label()} does not start at {format_point(center)}")
        candidates = _candidates(f, arc, variety, order)
        for series in candidates:
            o = ps_ord(series)
            if o.exact and not o.is_infinite and o.value < 0:
                raise DivergentProbe(f"f diverges along {arc.label()}")
        per_arc.append((arc, candidates))

    if f.is_regular_at(center):
        center_value = f.value_at(center)
    else:
        limits = [s.constant_term for _, candidates in per_arc for s in candidates]
        if not limits:
            raise DivergentProbe("no arc determines the value at the center")
        if any(value != limits[0] for value in limits[1:]):
            raise DivergentProbe("arc limits at the center disagree")
        center_value = limits[0]

    entries = []
    for arc, candidates in per_arc:
        distance = ps_ord(squared_distance(arc, center))
        for series in candidates:
            entries.append(_entry(arc, ps_ord(ps_sub(series, PuiseuxSeries.constant(center_value))), distance))

    unbounded = any(e.unbounded for e in entries)
    exponent = None if unbounded else max((e.need for e in entries if e.need is not None), default=1)
    logger.debug("probe at %s: N = %s", format_point(center), exponent)
    return LojReport(center, f, center_value, tuple(entries), exponent, unbounded)


def _entry(arc, function_order, distance_order):
    if not function_order.exact or not distance_order.exact:
        raise IndeterminateOrder("probe order hidden by truncation")
    if distance_order.is_infinite:
        # the arc stays at the center
        return LojEntry(arc, function_order.value, distance_order.value)
    if function_order.is_infinite:
        return LojEntry(arc, None, distance_order.value)
    if function_order.value == 0:
        return LojEntry(arc, function_order.value, distance_order.value, unbounded=True)
    need = ceil_rational(distance_order.value / function_order.value)
    return LojEntry(arc, function_order.value, distance_order.value, need=int(need))
