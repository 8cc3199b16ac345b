"""
Candidate continuous extensions of f = p/q along an arc inside Z(q).

On the variety, f^k is a root of q^k*T^k - p^k. Reducing that relation
modulo the defining polynomials and dropping its content in T can leave a
relation that survives along the arc; its liftings are the candidates.
"""
import logging
from functools import reduce

from .exceptions import DegenerateRelation
from .lifting import lift_arc, relation_coefficients, relation_ring
from .results import ExtensionReport

logger = logging.getLogger(__name__)

# largest power k tried when the variety does not suggest one
DEFAULT_MAX_POWER = 8


def _embed(ring, p):
    return ring.from_dict({(0,) + monom: c for monom, c in p.items()})


def reduced_power_relation(f, variety, k):
    """q^k*T^k - p^k modulo the variety, divided by its content in T"""
    ring = relation_ring(variety.names)
    T = ring.gens[0]
    relation = _embed(ring, f.denominator**k) * T**k - _embed(ring, f.numerator**k)
    if variety.polys:
        relation = relation.rem([_embed(ring, h) for h in variety.polys])
    if not relation:
        return relation
    coefficients = [c for c in relation_coefficients(relation) if c]
    content = reduce(lambda a, b: a.gcd(b), coefficients)
    return relation.exquo(_embed(ring, content))


def extend_along_pole_arc(f, variety, arc, order=None, max_power=None, tower_depth=None):
    if max_power is None:
        degrees = [max(sum(m) for m in h.monoms()) for h in variety.polys]
        max_power = max(degrees, default=DEFAULT_MAX_POWER) or 1
    for k in range(1, max_power + 1):
        relation = reduced_power_relation(f, variety, k)
        if not relation or relation.degree(0) < 1:
            continue
        try:
            lifting = lift_arc(relation, arc, order=order, tower_depth=tower_depth)
        except DegenerateRelation:
            continue
        logger.debug("power %d relation %s gives %d candidates", k, relation, lifting.count)
        return ExtensionReport(f, arc, k, relation, lifting.liftings)
    return ExtensionReport(f, arc, 0, None, ())
