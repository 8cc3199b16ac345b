from geometry.arcs import poly_along_arc, verify_arc_on_variety
from puiseux.exceptions import IndeterminateOrder
from puiseux.series import ps_ord

from .results import Containment, ContainmentReport


def _vanishes_at_origin(series):
    order = ps_ord(series)
    if order.is_infinite or order.value > 0:
        return True
    if not order.exact:
        raise IndeterminateOrder("order at the arc origin hidden by truncation")
    return False


def zero_containment_evidence(p, q, variety, arcs, order=None):
    """
    Arc evidence for Z(q) inside Z(p): every verified arc starting in Z(q)
    must start in Z(p). Arcs that fail verification are counted and skipped.
    """
    checked = rejected = 0
    for arc in arcs:
        if not verify_arc_on_variety(arc, variety, order).passed:
            rejected += 1
            continue
        checked += 1
        if _vanishes_at_origin(poly_along_arc(q, arc)) and not _vanishes_at_origin(poly_along_arc(p, arc)):
            return ContainmentReport(Containment.VIOLATION, arc, checked, rejected)
    return ContainmentReport(Containment.PASS, None, checked, rejected)
