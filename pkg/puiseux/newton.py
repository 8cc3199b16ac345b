"""
Real branches of a relation F(t, Y) = 0 near t = 0+.

The relation is handed over as its list of Y-coefficients, each a
PuiseuxSeries in t (``expand_branches``); ``newton_puiseux`` builds that list
from an exact bivariate polynomial. Each Newton polygon edge contributes the
real roots of its edge polynomial; a branch is expanded until substituting it
back leaves a residual of order at least the target.
"""
import logging
from dataclasses import dataclass, field as dataclass_field
from functools import cmp_to_key
from itertools import pairwise
from math import comb

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from exact_arith.exceptions import ArityMismatch, ZeroPolynomialError
from exact_arith.fields import FieldElement, embed_common, field_real_roots
from regulous.conf import resolve

from .exceptions import IndeterminateOrder, TowerDepthExceeded
from .series import (
    Order,
    PuiseuxSeries,
    ps_add,
    ps_evaluate,
    ps_ord,
    ps_scale,
    ps_shift,
    ps_sub,
    ps_truncate,
)

logger = logging.getLogger(__name__)

BIVARIATE, t, Y = ring("t,Y", QQ)

# Newton steps allowed for one relation before giving up
MAX_STEPS = 4096


@dataclass(frozen=True, eq=False)
class Branch:
    series: PuiseuxSeries
    residual: Order
    # size of the root cluster the branch was split from
    multiplicity: int = 1

    @property
    def order(self):
        return ps_ord(self.series)

    @property
    def is_negative(self):
        """Unbounded as t -> 0+"""
        order = self.order
        return not order.is_infinite and order.exact and order.value < 0

    @property
    def is_exact(self):
        return self.series.is_exact

    def __str__(self):
        return str(self.series)


@dataclass(frozen=True)
class BranchSet:
    branches: tuple
    target: object
    degree: int
    # True when repeated Y-factors were divided out first
    squarefree_reduced: bool = False

    def __iter__(self):
        return iter(self.branches)

    def __len__(self):
        return len(self.branches)

    def __getitem__(self, index):
        return self.branches[index]

    @property
    def series(self):
        return [b.series for b in self.branches]


@dataclass(frozen=True)
class Edge:
    start: int
    end: int
    # branch order contributed by the edge
    slope: object
    # order of F after substituting c*t^slope, before cancellation
    height: object


@dataclass
class _State:
    coefficients: list
    field: object
    terms: tuple = ()
    shift: object = QQ.zero
    value: object = QQ.zero
    cluster: int = None
    children: list = dataclass_field(default_factory=list)


def as_bivariate(F):
    if F.ring == BIVARIATE:
        return F
    if F.ring.ngens != 2:
        raise ArityMismatch(2, F.ring.ngens, what="relation")
    return BIVARIATE.from_dict(dict(F))


def coefficient_series(F):
    """Y-coefficients of F(t, Y) as exact series in t, lowest power of Y first"""
    F = as_bivariate(F)
    degree = F.degree(1)
    buckets = [[] for _ in range(degree + 1)]
    for (a, j), c in F.items():
        buckets[j].append((a, c))
    return [PuiseuxSeries.build(bucket) for bucket in buckets]


def newton_puiseux(F, order=None, tower_depth=None):
    """All real branches Y(t) of F(t, Y) = 0 as t -> 0+, expanded to the target order"""
    F = as_bivariate(F)
    if not F:
        raise ZeroPolynomialError("the zero relation has every series as a root")
    reduced = False
    if F.degree(1) > 0:
        common = F.gcd(F.diff(Y))
        if common.degree(1) > 0:
            reduced = True
            F = F.exquo(common)
    coefficients = coefficient_series(F)
    branches = expand_branches(coefficients, order=order, tower_depth=tower_depth)
    return BranchSet(branches, QQ.convert(resolve("ORDER", order)), F.degree(1), reduced)


def expand_branches(coefficients, order=None, tower_depth=None):
    """
    Real branches of sum_j coefficients[j] * Y^j = 0, where the coefficients
    are PuiseuxSeries. Truncated coefficients are allowed; when the truncation
    hides a Newton polygon vertex IndeterminateOrder is raised.
    """
    target = QQ.convert(resolve("ORDER", order))
    depth_cap = resolve("TOWER_DEPTH", tower_depth)
    coefficients = list(coefficients)
    while coefficients and coefficients[-1].is_exact_zero:
        coefficients.pop()
    if not coefficients:
        raise ZeroPolynomialError("the zero relation has every series as a root")
    if len(coefficients) == 1:
        return ()

    field, coefficients = _common_coefficients(coefficients)
    if field.depth > depth_cap:
        raise TowerDepthExceeded(field.depth, depth_cap)

    found = []
    stack = [_State(coefficients, field)]
    steps = 0
    while stack:
        steps += 1
        if steps > MAX_STEPS:
            raise IndeterminateOrder("Newton iteration did not settle; the relation is too degenerate")
        state = stack.pop()
        _step(state, target, depth_cap, found)
        stack.extend(reversed(state.children))

    branches = [_certify(coefficients, branch) for branch in found]
    branches = _deduplicate(sorted(branches, key=cmp_to_key(compare_branches)))
    logger.debug("found %d real branches to order %s", len(branches), target)
    return tuple(branches)


def _common_coefficients(coefficients):
    flat = [c for series in coefficients for _, c in series.terms]
    field, embedded = embed_common(flat)
    moved, position = [], 0
    for series in coefficients:
        n = len(series.terms)
        terms = tuple((e, c) for (e, _), c in zip(series.terms, embedded[position:position + n]))
        moved.append(PuiseuxSeries(terms, series.precision))
        position += n
    return field, moved


def _low(series):
    if series.terms:
        return series.terms[0][0]
    return series.precision


def _step(state, target, depth_cap, found):
    coefficients = state.coefficients
    cluster = state.cluster
    partial = state.terms

    # Y divides the relation: the expansion so far is an exact root. Each
    # factor divided out adds the order of the next term to the residual.
    divided = 0
    while coefficients and coefficients[0].is_exact_zero:
        found.append(Branch(PuiseuxSeries(partial), Order(None), 1))
        coefficients = coefficients[1:]
        divided += 1
        if cluster is not None:
            cluster -= 1
            if cluster == 0:
                return
    if len(coefficients) <= 1:
        return

    if cluster is not None and state.value + _low(coefficients[0]) >= target:
        bounds = [
            _low(coefficients[j]) / (cluster - j)
            for j in range(cluster)
            if not coefficients[j].is_exact_zero
        ]
        precision = state.shift + min(bounds)
        series = PuiseuxSeries.build(partial, precision)
        found.append(Branch(series, Order(state.value + _low(coefficients[0]), exact=False), cluster))
        return

    for edge in newton_edges(coefficients, cluster):
        if cluster is not None and edge.slope <= 0:
            continue
        characteristic = []
        for j in range(edge.start, edge.end + 1):
            series = coefficients[j]
            on_edge = series.terms and series.terms[0][0] + j * edge.slope == edge.height
            characteristic.append(series.terms[0][1] if on_edge else state.field.zero())
        for root in field_real_roots(characteristic, base=state.field):
            join = root.join
            if join.field.depth > depth_cap:
                raise TowerDepthExceeded(join.field.depth, depth_cap)
            moved = [_into_join(join, series) for series in coefficients]
            value = state.value + edge.height + divided * edge.slope
            bound = max(target - value, QQ.one)
            state.children.append(
                _State(
                    transform(moved, root.value, edge.slope, edge.height, bound),
                    join.field,
                    tuple((e, join.embed_left(c)) for e, c in partial) + ((state.shift + edge.slope, root.value),),
                    state.shift + edge.slope,
                    value,
                    root.multiplicity,
                )
            )


def _into_join(join, series):
    return PuiseuxSeries(tuple((e, join.embed_left(c)) for e, c in series.terms), series.precision)


def transform(coefficients, c, slope, height, bound):
    """
    Coefficients of t^-height * F(t, t^slope * (c + Y)), truncated at bound.
    """
    degree = len(coefficients) - 1
    shifted = [ps_shift(a, j * slope) for j, a in enumerate(coefficients)]
    powers = [FieldElement.rational(1)]
    for _ in range(degree):
        powers.append(powers[-1] * c)
    result = []
    for i in range(degree + 1):
        total = PuiseuxSeries.zero()
        for j in range(i, degree + 1):
            if shifted[j].is_exact_zero:
                continue
            total = ps_add(total, ps_scale(shifted[j], powers[j - i] * comb(j, i)))
        result.append(ps_truncate(ps_shift(total, -height), bound))
    return result


def lower_hull(points):
    hull = []
    for point in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            x3, y3 = point
            if (x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(point)
    return hull


def _hull_height(hull, j):
    for (x1, y1), (x2, y2) in pairwise(hull):
        if x1 <= j <= x2:
            return y1 + (y2 - y1) * QQ(j - x1, x2 - x1)
    return hull[0][1]


def newton_edges(coefficients, limit=None):
    """
    Lower Newton polygon edges of the points (j, ord a_j), j <= limit.
    Points whose order is only bounded must lie strictly above the polygon.
    """
    top = len(coefficients) - 1 if limit is None else limit
    known, unknown = [], []
    for j in range(top + 1):
        series = coefficients[j]
        if series.terms:
            known.append((j, series.terms[0][0]))
        elif not series.is_exact:
            unknown.append((j, series.precision))
    if not known:
        raise IndeterminateOrder("no coefficient has a known order; raise the target order")
    hull = lower_hull(known)
    for j, bound in unknown:
        if j < hull[0][0] or j > hull[-1][0] or bound <= _hull_height(hull, j):
            raise IndeterminateOrder(f"order of the Y^{j} coefficient is hidden by truncation")
    return [
        Edge(j0, j1, (a0 - a1) / (j1 - j0), a0 + j0 * (a0 - a1) / (j1 - j0))
        for (j0, a0), (j1, a1) in pairwise(hull)
    ]


def _certify(coefficients, branch):
    """Recompute the residual by substitution; promote exact roots"""
    partial = PuiseuxSeries(branch.series.terms)
    residual = ps_ord(ps_evaluate(coefficients, partial))
    if residual.is_infinite:
        return Branch(partial, residual, branch.multiplicity)
    if not residual.exact and not branch.residual.is_infinite:
        residual = Order(max(residual.value, branch.residual.value), exact=False)
    return Branch(branch.series, residual, branch.multiplicity)


def compare_branches(a, b):
    """Order by t-order, then by value for small t > 0"""
    oa, ob = a.order, b.order
    if oa.is_infinite or ob.is_infinite:
        return (oa.is_infinite) - (ob.is_infinite)
    if oa.value != ob.value:
        return -1 if oa.value < ob.value else 1
    difference = ps_sub(a.series, b.series)
    if not difference.terms:
        return 0
    return difference.terms[0][1].sign()


def _deduplicate(branches):
    kept = []
    for branch in branches:
        if kept and compare_branches(kept[-1], branch) == 0:
            previous = kept[-1]
            kept[-1] = Branch(previous.series, previous.residual, previous.multiplicity + branch.multiplicity)
            continue
        kept.append(branch)
    return kept


