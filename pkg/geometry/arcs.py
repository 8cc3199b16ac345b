"""
Arcs: tuples of Puiseux series with nonnegative order, read as germs of
curves t -> gamma(t) for t > 0 small.
"""
import logging
from dataclasses import dataclass, replace
from math import lcm

from sympy.polys.domains import QQ

from exact_arith.exceptions import ArityMismatch
from puiseux.series import PuiseuxSeries, ps_add, ps_mul, ps_ord, ps_ramify, ps_scale
from regulous.conf import resolve

from .exceptions import InvalidArc

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Arc:
    components: tuple
    name: str = ""
    # residual order per defining polynomial, filled by verification
    verified_to: tuple = ()

    def __post_init__(self):
        for i, component in enumerate(self.components):
            order = ps_ord(component)
            if order.exact and not order.is_infinite and order.value < 0:
                raise InvalidArc(f"arc component {i + 1} has negative order {order}")

    @classmethod
    def from_series(cls, components, name=""):
        return cls(tuple(components), name)

    @property
    def arity(self):
        return len(self.components)

    @property
    def origin(self):
        """gamma(0), the constant terms"""
        return tuple(c.constant_term for c in self.components)

    @property
    def is_exact(self):
        return all(c.is_exact for c in self.components)

    @property
    def ramification_index(self):
        e = 1
        for c in self.components:
            e = lcm(e, c.ramification_index)
        return e

    def exact_part(self):
        """The arc with every truncation tail dropped"""
        return replace(self, components=tuple(PuiseuxSeries(c.terms) for c in self.components))

    def ramify(self, m):
        return Arc(tuple(ps_ramify(c, m) for c in self.components), self.name)

    def label(self):
        return self.name or str(self)

    def __eq__(self, other):
        if not isinstance(other, Arc):
            return NotImplemented
        return self.components == other.components

    __hash__ = None

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def poly_along_arc(p, arc):
    """The series p(gamma(t)); exact when the arc is exact"""
    if p.ring.ngens != arc.arity:
        raise ArityMismatch(p.ring.ngens, arc.arity, what="arc")
    powers = [dict() for _ in arc.components]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            cache[k] = arc.components[i] if k == 1 else ps_mul(power(i, k - 1), arc.components[i])
        return cache[k]

    total = PuiseuxSeries.zero()
    for monom, c in p.items():
        term = PuiseuxSeries.constant(c)
        for i, k in enumerate(monom):
            if k:
                term = ps_mul(term, power(i, k))
        total = ps_add(total, term)
    return total


@dataclass(frozen=True)
class ArcVerification:
    arc: Arc
    residuals: tuple
    target: object

    @property
    def passed(self):
        return all(r.at_least(self.target) for r in self.residuals)

    def __str__(self):
        return ", ".join(str(r) for r in self.residuals) or "EXACT-ZERO"


def verify_arc_on_variety(arc, variety, order=None, tails=True):
    """
    Residual order of every defining polynomial along the arc. Truncation
    tails make a residual a lower bound (">= q"); with tails=False they are
    dropped and the residual certifies the stored terms only.
    """
    target = QQ.convert(resolve("ORDER", order))
    if arc.arity != variety.arity:
        raise ArityMismatch(variety.arity, arc.arity, what="arc")
    evaluated = arc if tails else arc.exact_part()
    residuals = tuple(ps_ord(poly_along_arc(p, evaluated)) for p in variety.polys)
    checked = replace(arc, verified_to=residuals)
    result = ArcVerification(checked, residuals, target)
    if not result.passed:
        logger.debug("arc %s leaves residual orders %s", arc, result)
    return result


def linear_arc(base, d1, d2=None, curvature=False):
    """x0 + t*d1, plus t^2*d2 when curvature is set"""
    components = []
    for i, x in enumerate(base):
        series = ps_add(PuiseuxSeries.constant(x), PuiseuxSeries.monomial(d1[i], 1))
        if curvature and d2 is not None:
            series = ps_add(series, PuiseuxSeries.monomial(d2[i], 2))
        components.append(series)
    return Arc(tuple(components))


def plane_arc(base, d1, d2, branch):
    """x0 + t*d1 + u(t)*d2 for a branch u of the slice relation"""
    components = []
    for i, x in enumerate(base):
        series = ps_add(PuiseuxSeries.constant(x), PuiseuxSeries.monomial(d1[i], 1))
        if d2[i]:
            series = ps_add(series, ps_scale(branch, d2[i]))
        components.append(series)
    return Arc(tuple(components))

