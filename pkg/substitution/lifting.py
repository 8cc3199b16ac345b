"""
Liftings of arcs and points through a relation P(x, T) = 0.

Relations are polynomials of a ring whose first generator is T and whose
remaining generators are the variety's variables.
"""
import logging
from math import lcm

from sympy.polys.domains import QQ

from exact_arith.exceptions import ArityMismatch, ZeroPolynomialError
from exact_arith.fields import field_real_roots
from exact_arith.polys import polynomial_ring
from geometry.arcs import poly_along_arc
from geometry.varieties import evaluate_at
from puiseux.newton import expand_branches
from puiseux.series import ps_ramify, ps_substitute_power

from .along import with_order_retry
from .exceptions import DegenerateRelation
from .results import LiftingReport

logger = logging.getLogger(__name__)

LIFT_VARIABLE = "T"


def relation_ring(names):
    return polynomial_ring((LIFT_VARIABLE,) + tuple(names))


def coefficient_ring(relation):
    return polynomial_ring(str(s) for s in relation.ring.symbols[1:])


def relation_coefficients(relation):
    """Coefficients of T^0, T^1, ... as polynomials in the variety's variables"""
    ring = coefficient_ring(relation)
    degree = max((monom[0] for monom in relation.monoms()), default=0)
    buckets = [dict() for _ in range(degree + 1)]
    for monom, c in relation.items():
        buckets[monom[0]][monom[1:]] = c
    return [ring.from_dict(bucket) for bucket in buckets]


def squarefree_relation(relation):
    """Divide out repeated factors in T; returns (relation, reduced flag)"""
    if not relation:
        raise ZeroPolynomialError("the zero relation")
    if relation.degree(0) < 1:
        return relation, False
    T = relation.ring.gens[0]
    common = relation.gcd(relation.diff(T))
    if common.degree(0) > 0:
        return relation.exquo(common), True
    return relation, False


def lift_arc(relation, arc, order=None, tower_depth=None):
    """
    Real solutions T(t) of P(gamma(t), T) = 0. Those with order >= 0 are the
    liftings; the rest diverge and are reported separately.
    """
    if relation.ring.ngens - 1 != arc.arity:
        raise ArityMismatch(arc.arity, relation.ring.ngens - 1, what="relation")
    relation, reduced = squarefree_relation(relation)
    coefficients = [poly_along_arc(c, arc) for c in relation_coefficients(relation)]
    while coefficients and coefficients[-1].is_exact_zero:
        coefficients.pop()
    if not coefficients:
        raise DegenerateRelation("every coefficient of the relation vanishes along the arc")

    e = lcm(*(c.ramification_index for c in coefficients))
    ramified = [ps_ramify(c, e) for c in coefficients]

    def expand(target):
        return target, expand_branches(ramified, order=target, tower_depth=tower_depth)

    target, branches = with_order_retry(expand, order)

    liftings, non_liftings = [], []
    for branch in branches:
        series = ps_substitute_power(branch.series, QQ(1, e))
        if branch.is_negative:
            non_liftings.append(series)
        else:
            liftings.append(series)
    logger.debug("relation lifts along %s in %d ways", arc, len(liftings))
    return LiftingReport(relation, arc, tuple(liftings), tuple(non_liftings), target, e, reduced)


def point_lift(relation, point):
    """Distinct real roots T of P(x0, T)"""
    if relation.ring.ngens - 1 != len(point):
        raise ArityMismatch(len(point), relation.ring.ngens - 1, what="relation")
    values = specialize(relation, point)
    if all(v.is_zero for v in values):
        raise DegenerateRelation("the relation vanishes identically at the point")
    while values[-1].is_zero:
        values.pop()
    return [root.value.value for root in field_real_roots(values)]


def specialize(relation, point):
    """P(x0, T) as a list of FieldElement coefficients"""
    return [evaluate_at(c, point) for c in relation_coefficients(relation)]

