"""
Polynomial plumbing over the rationals.

Multivariate polynomials are sympy ``PolyElement`` values of a ``PolyRing``
over ``QQ``. Univariate work happens in ``UNIVARIATE`` (generator ``T``);
resultants are taken in ``ELIMINATION``, whose first generator is the one
eliminated.
"""
import logging

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyRing, ring
from sympy.polys.rootisolation import (
    dup_cauchy_upper_bound,
    dup_count_real_roots,
    dup_isolate_real_roots_sqf,
)

from .exceptions import ArityMismatch, ZeroPolynomialError

logger = logging.getLogger(__name__)

UNIVARIATE, T = ring("T", QQ)
ELIMINATION, ELIM_Y, ELIM_X = ring("_y,_x", QQ)

POLY_OPERATIONS = ("add", "sub", "mul")


def polynomial_ring(names):
    """Polynomial ring over QQ in the given variable names"""
    return PolyRing(tuple(names), QQ)


def poly_arith(a, b, op):
    """Exact ring operation on two polynomials of the same arity"""
    if a.ring.ngens != b.ring.ngens:
        raise ArityMismatch(a.ring.ngens, b.ring.ngens)
    if b.ring != a.ring:
        b = a.ring.from_dict(dict(b))
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def as_univariate(p):
    if p.ring == UNIVARIATE:
        return p
    if p.ring.ngens != 1:
        raise ArityMismatch(1, p.ring.ngens)
    return UNIVARIATE.from_dict(dict(p))


def degree(p):
    """Degree of a univariate polynomial, -1 for zero"""
    if not p:
        return -1
    return p.degree()


def coefficient(p, k):
    return p.get((k,), QQ.zero)


def value_at(p, x):
    """Evaluate a univariate polynomial at a rational point"""
    result = QQ.zero
    for c in p.to_dense():
        result = result * x + c
    return result


def rational_sign(q):
    return (q > 0) - (q < 0)


def ceil_rational(q):
    n, d = QQ.numer(q), QQ.denom(q)
    return -((-n) // d)


def floor_rational(q):
    return QQ.numer(q) // QQ.denom(q)


def count_roots(p, lo, hi):
    """Number of distinct real roots of p in the open interval (lo, hi)"""
    if degree(p) <= 0 or lo >= hi:
        return 0
    # sympy counts the closed interval
    count = dup_count_real_roots(p.to_dense(), QQ, inf=lo, sup=hi)
    return count - (value_at(p, lo) == 0) - (value_at(p, hi) == 0)


def root_bound(p):
    """Rational B with every complex root of p strictly inside (-B, B)"""
    return dup_cauchy_upper_bound(p.to_dense(), QQ) + QQ.one


def isolate_real_roots(p):
    """
    Disjoint open isolating intervals, one per distinct real root of p,
    in increasing order. Interval endpoints are never roots.
    """
    if not p:
        raise ZeroPolynomialError("cannot isolate the roots of the zero polynomial")
    f = as_univariate(p).sqf_part()
    if degree(f) <= 0:
        return []
    found = [
        _pull_in_endpoints(f, QQ.convert(s), QQ.convert(t))
        for s, t in dup_isolate_real_roots_sqf(f.to_dense(), QQ)
    ]
    isolated = []
    for i, (lo, hi) in enumerate(found):
        if lo == hi:
            # sympy hit the root exactly
            below = found[i - 1][1] if i else None
            above = found[i + 1][0] if i + 1 < len(found) else None
            lo, hi = _widen(f, lo, below, above)
        isolated.append((lo, hi))
    logger.debug("isolated %d real roots of %s", len(isolated), f)
    return isolated


def _pull_in_endpoints(f, s, t):
    if s == t:
        return s, t
    step = (t - s) / 4
    while True:
        lo = s + step if value_at(f, s) == 0 else s
        hi = t - step if value_at(f, t) == 0 else t
        if value_at(f, lo) != 0 and value_at(f, hi) != 0 and count_roots(f, lo, hi) == 1:
            return lo, hi
        step /= 2


def _widen(f, r, below, above):
    delta = QQ.one
    if below is not None:
        delta = min(delta, (r - below) / 2)
    if above is not None:
        delta = min(delta, (above - r) / 2)
    while value_at(f, r - delta) == 0 or value_at(f, r + delta) == 0 or count_roots(f, r - delta, r + delta) != 1:
        delta /= 2
    return r - delta, r + delta


def bisect_root(p, lo, hi):
    """
    One bisection step on the single simple root of p in (lo, hi).
    Returns (m, m) when the midpoint is the root.
    """
    mid = (lo + hi) / 2
    at_mid = rational_sign(value_at(p, mid))
    if at_mid == 0:
        return mid, mid
    if rational_sign(value_at(p, lo)) != at_mid:
        return lo, mid
    return mid, hi


def interval_value(p, lo, hi):
    """Closed rational enclosure of p over [lo, hi], monomial by monomial"""
    low, high = QQ.zero, QQ.zero
    for (k,), c in p.items():
        a, b = _power_range(lo, hi, k)
        if c >= 0:
            low, high = low + c * a, high + c * b
        else:
            low, high = low + c * b, high + c * a
    return low, high


def _power_range(lo, hi, k):
    if k == 0:
        return QQ.one, QQ.one
    a, b = lo**k, hi**k
    if k % 2 == 1 or lo >= 0:
        return a, b
    if hi <= 0:
        return b, a
    return QQ.zero, max(a, b)


def interval_product(x, y):
    products = [x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]]
    return min(products), max(products)


def interval_sum(x, y):
    return x[0] + y[0], x[1] + y[1]


# Resultant constructions. Each returns a univariate polynomial in T.

def _embed_y(p):
    return ELIMINATION.from_dict({(k, 0): c for (k,), c in p.items()})


def _embed_x(p):
    return ELIMINATION.from_dict({(0, k): c for (k,), c in p.items()})


def eliminate(f, g):
    """Res_y(f, g) for f, g in ELIMINATION, as a polynomial in T"""
    res = f.resultant(g)
    if not hasattr(res, "items"):
        return UNIVARIATE(res)
    return UNIVARIATE.from_dict({(monom[0],): c for monom, c in res.items()})


def sum_polynomial(pa, pb):
    """Vanishes at a + b for every root a of pa and b of pb"""
    shifted = _embed_x(pb).compose(ELIM_X, ELIM_X - ELIM_Y)
    return eliminate(_embed_y(pa), shifted)


def product_polynomial(pa, pb):
    """Vanishes at a * b for every root a of pa and b of pb"""
    db = degree(pb)
    homogenized = ELIMINATION.from_dict({(db - k, k): c for (k,), c in pb.items()})
    return eliminate(_embed_y(pa), homogenized)


def combination_polynomial(pa, pb, k):
    """Vanishes at b + k*a for every root a of pa and b of pb"""
    shifted = _embed_x(pb).compose(ELIM_X, ELIM_X - k * ELIM_Y)
    return eliminate(_embed_y(pa), shifted)


def image_polynomial(m, g):
    """Vanishes at g(a) for every root a of m"""
    return eliminate(_embed_y(m), ELIM_X - _embed_y(g))


def norm_polynomial(m, coefficients):
    """
    Res_y(m(y), sum_i g_i(y) x^i): vanishes at every root of the polynomial
    with coefficients g_i(a), for every root a of m.
    """
    relation = ELIMINATION.zero
    for i, g in enumerate(coefficients):
        relation += _embed_y(g) * ELIM_X**i
    return eliminate(_embed_y(m), relation)


def reflect(p):
    """p(-T)"""
    return UNIVARIATE.from_dict({(k,): (-c if k % 2 else c) for (k,), c in p.items()})


def reverse(p):
    """T^d p(1/T)"""
    d = degree(p)
    return UNIVARIATE.from_dict({(d - k,): c for (k,), c in p.items()})


def shift(p, r):
    """p(T - r)"""
    return p.compose(T, T - r)


def dilate(p, r):
    """Polynomial whose roots are r times the roots of p (r nonzero)"""
    d = degree(p)
    return UNIVARIATE.from_dict({(k,): c * r ** (d - k) for (k,), c in p.items()})


# Canonical text

def format_rational(q):
    n, d = QQ.numer(q), QQ.denom(q)
    if d == 1:
        return str(n)
    return f"{n}/{d}"


def format_monomial(names, monom):
    factors = []
    for name, k in zip(names, monom):
        if k == 1:
            factors.append(name)
        elif k > 1:
            factors.append(f"{name}^{k}")
    return "*".join(factors)


def format_polynomial(p, names=None):
    """Canonical text of a polynomial: lex-descending terms, rational coefficients"""
    if names is None:
        names = [str(s) for s in p.ring.symbols]
    if not p:
        return "0"
    pieces = []
    for monom, coeff in p.terms():
        mono = format_monomial(names, monom)
        size = abs(coeff)
        if not mono:
            body = format_rational(size)
        elif size == 1:
            body = mono
        else:
            body = f"{format_rational(size)}*{mono}"
        pieces.append((coeff < 0, body))
    negative, body = pieces[0]
    text = f"-{body}" if negative else body
    for negative, body in pieces[1:]:
        text += f" - {body}" if negative else f" + {body}"
    return text
