"""
Arcs on a hypersurface through a point, from 2-plane slices.

Restricting h to the plane x0 + s*d1 + u*d2 gives a relation F(s, u) = 0;
each real Newton-Puiseux branch u(s) with u(0) = 0 becomes the arc
x0 + t*d1 + u(t)*d2. Planes are enumerated deterministically.
"""
import logging
from dataclasses import dataclass
from itertools import count, permutations

from sympy.polys.domains import QQ

from exact_arith.exceptions import ArityMismatch
from exact_arith.polys import format_rational
from puiseux.newton import BIVARIATE, expand_branches, newton_puiseux
from puiseux.series import PuiseuxSeries, ps_add, ps_mul
from regulous.conf import resolve

from .arcs import linear_arc, plane_arc, verify_arc_on_variety
from .exceptions import PlaneContainedInVariety, PointNotOnVariety
from .varieties import evaluate_at, format_point

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SliceSpec:
    base: tuple
    d1: tuple
    # None on the line (one variable)
    d2: tuple = None

    def __post_init__(self):
        n = len(self.base)
        if len(self.d1) != n or (self.d2 is not None and len(self.d2) != n):
            raise ArityMismatch(n, len(self.d1), what="direction")
        if self.d2 is None:
            if not any(self.d1):
                raise ValueError("slice direction is zero")
            return
        independent = any(
            self.d1[i] * self.d2[j] != self.d1[j] * self.d2[i]
            for i in range(n)
            for j in range(i + 1, n)
        )
        if not independent:
            raise ValueError("slice directions are linearly dependent")

    @property
    def is_line(self):
        return self.d2 is None

    def __str__(self):
        text = f"at {format_point(self.base)} along {_format_vector(self.d1)}"
        if self.d2 is not None:
            text += f" {_format_vector(self.d2)}"
        return text


def _format_vector(v):
    return "(" + ", ".join(format_rational(QQ.convert(c)) for c in v) + ")"


def _unit(n, i, scale=1):
    return tuple(QQ(scale) if k == i else QQ.zero for k in range(n))


def stern_brocot(height):
    """Positive reduced fractions p/q with max(p, q) == height, in increasing order"""
    fractions = set()
    for a in range(1, height + 1):
        for p, q in ((a, height), (height, a)):
            fraction = QQ(p, q)
            if max(QQ.numer(fraction), QQ.denom(fraction)) == height:
                fractions.add(fraction)
    return sorted(fractions)


def slice_planes(n):
    """
    Direction pairs (d1, d2) by increasing height: coordinate planes with
    both orientations of d1 first, then d1 tilted by p/q towards a second
    axis other than the axis of d2. One variable gives the two half-lines;
    two variables give only the coordinate planes, since every tilt spans the
    same plane.
    """
    if n == 1:
        yield _unit(1, 0), None
        yield _unit(1, 0, -1), None
        return
    for i, j in permutations(range(n), 2):
        for s in (1, -1):
            yield _unit(n, i, s), _unit(n, j)
    if n == 2:
        return
    for height in count(1):
        for fraction in stern_brocot(height):
            p, q = QQ.numer(fraction), QQ.denom(fraction)
            for i, j in permutations(range(n), 2):
                for k in range(n):
                    if k in (i, j):
                        continue
                    for s1 in (1, -1):
                        for s2 in (1, -1):
                            d1 = [QQ.zero] * n
                            d1[i] = QQ(s1 * q)
                            d1[k] += QQ(s1 * s2 * p)
                            yield tuple(d1), _unit(n, j)


def _linear_forms(spec):
    """Each coordinate of x0 + t*d1 + Y*d2 as a polynomial in Y with series coefficients"""
    forms = []
    for i, x in enumerate(spec.base):
        constant = ps_add(PuiseuxSeries.constant(x), PuiseuxSeries.monomial(spec.d1[i], 1))
        slope = PuiseuxSeries.constant(spec.d2[i]) if spec.d2 is not None else PuiseuxSeries.zero()
        forms.append([constant, slope])
    return forms


def _poly_mul(a, b):
    product = [PuiseuxSeries.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            product[i + j] = ps_add(product[i + j], ps_mul(x, y))
    return product


def restrict_to_plane(h, spec):
    """Y-coefficients of h(x0 + t*d1 + Y*d2), lowest first, as series in t"""
    forms = _linear_forms(spec)
    total = [PuiseuxSeries.zero()]
    for monom, c in h.items():
        term = [PuiseuxSeries.constant(c)]
        for i, k in enumerate(monom):
            for _ in range(k):
                term = _poly_mul(term, forms[i])
        width = max(len(total), len(term))
        total = [
            ps_add(total[j] if j < len(total) else PuiseuxSeries.zero(), term[j] if j < len(term) else PuiseuxSeries.zero())
            for j in range(width)
        ]
    while total and total[-1].is_exact_zero:
        total.pop()
    return total


def restrict_rational(h, spec):
    """h(x0 + t*d1 + Y*d2) in QQ[t, Y] for a rational base point"""
    t, Y = BIVARIATE.gens
    forms = [
        BIVARIATE(x.constant_value) + spec.d1[i] * t + spec.d2[i] * Y
        for i, x in enumerate(spec.base)
    ]
    total = BIVARIATE.zero
    for monom, c in h.items():
        term = BIVARIATE(c)
        for form, k in zip(forms, monom):
            if k:
                term *= form**k
        total += term
    return total


def _approaches_base(branch):
    order = branch.order
    return order.is_infinite or order.value > 0


def slice_branches(variety, spec, order=None, tower_depth=None):
    """Verified arcs of the hypersurface through spec.base inside the slice plane"""
    h = variety.hypersurface
    if not evaluate_at(h, spec.base).is_zero:
        raise PointNotOnVariety(f"{format_point(spec.base)} is not on the variety")
    if spec.is_line:
        if restrict_to_plane(h, spec):
            return []
        raise PlaneContainedInVariety(f"line {spec} lies inside the variety")

    if all(x.is_constant for x in spec.base):
        relation = restrict_rational(h, spec)
        if not relation:
            raise PlaneContainedInVariety(f"plane {spec} lies inside the variety")
        branches = newton_puiseux(relation, order=order, tower_depth=tower_depth)
    else:
        coefficients = restrict_to_plane(h, spec)
        if not coefficients:
            raise PlaneContainedInVariety(f"plane {spec} lies inside the variety")
        branches = expand_branches(coefficients, order=order, tower_depth=tower_depth)

    arcs, dropped = [], 0
    for branch in branches:
        if not _approaches_base(branch):
            dropped += 1
            continue
        arc = plane_arc(spec.base, spec.d1, spec.d2, branch.series)
        # the expansion certifies its stored terms; its tail bound is weaker
        verification = verify_arc_on_variety(arc, variety, order, tails=False)
        if not verification.passed:
            logger.warning("dropping arc %s: residual %s", arc, verification)
            dropped += 1
            continue
        arcs.append(verification.arc)
    logger.debug("slice %s: %d arcs, %d branches dropped", spec, len(arcs), dropped)
    return arcs


def free_arcs(spec):
    """Arcs of the slice plane itself, for planes inside the variety"""
    arcs = [linear_arc(spec.base, spec.d1)]
    if spec.d2 is not None:
        arcs.append(linear_arc(spec.base, spec.d1, spec.d2, curvature=True))
    return arcs


def arcs_through(variety, spec, order=None, tower_depth=None):
    """
    Arcs on the variety through spec.base within the slice. Only hypersurfaces
    and the full space are sliced; other varieties take user arcs.
    """
    if variety.is_full_space:
        return free_arcs(spec)
    try:
        return slice_branches(variety, spec, order=order, tower_depth=tower_depth)
    except PlaneContainedInVariety:
        logger.debug("plane %s inside the variety, using its own arcs", spec)
        target = resolve("ORDER", order)
        checked = [verify_arc_on_variety(a, variety, target) for a in free_arcs(spec)]
        return [v.arc for v in checked if v.passed]


def singular_points_hint(variety):
    """h and its partial derivatives; their common zeros are the singular points"""
    h = variety.hypersurface
    return [h] + [h.diff(x) for x in variety.ring.gens]
