"""
Truncated Puiseux series in one variable t, for t > 0.

A series is a finite, strictly increasing tuple of (exponent, coefficient)
terms plus a truncation order. ``precision=None`` marks an EXACT series (no
tail); otherwise every exponent is below the precision and the unknown tail
is O(t^precision). Coefficients are FieldElements, so series arising from
one computation share a coefficient field.
"""
import math
from dataclasses import dataclass
from itertools import chain

from sympy.polys.domains import QQ

from exact_arith.fields import FieldElement, RATIONALS
from exact_arith.polys import format_rational
from regulous.conf import resolve

from .exceptions import IndeterminateOrder, SeriesZeroDivision

SERIES_OPERATIONS = ("add", "sub", "mul")


def _coefficient(value):
    if isinstance(value, FieldElement):
        return value
    return FieldElement.rational(value)


@dataclass(frozen=True, eq=False)
class PuiseuxSeries:
    terms: tuple = ()
    precision: object = None

    @classmethod
    def build(cls, pairs, precision=None):
        """Normalize (exponent, coefficient) pairs: merge, drop zeros, sort, truncate"""
        if precision is not None:
            precision = QQ.convert(precision)
        collected = {}
        for exponent, coeff in pairs:
            exponent = QQ.convert(exponent)
            if precision is not None and exponent >= precision:
                continue
            coeff = _coefficient(coeff)
            collected[exponent] = collected[exponent] + coeff if exponent in collected else coeff
        terms = tuple(
            (exponent, collected[exponent])
            for exponent in sorted(collected)
            if not collected[exponent].is_zero
        )
        return cls(terms, precision)

    @classmethod
    def zero(cls, precision=None):
        return cls((), None if precision is None else QQ.convert(precision))

    @classmethod
    def constant(cls, value):
        return cls.build([(QQ.zero, value)])

    @classmethod
    def monomial(cls, coeff, exponent):
        return cls.build([(exponent, coeff)])

    @classmethod
    def from_polynomial(cls, p):
        """Exact series of a polynomial in t (a one-generator PolyElement)"""
        return cls.build(((monom[0], c) for monom, c in p.items()))

    # Queries

    @property
    def is_exact(self):
        return self.precision is None

    @property
    def is_exact_zero(self):
        return self.is_exact and not self.terms

    @property
    def ramification_index(self):
        return math.lcm(1, *(int(QQ.denom(e)) for e, _ in self.terms))

    @property
    def leading(self):
        return self.terms[0] if self.terms else None

    def coefficient(self, exponent):
        exponent = QQ.convert(exponent)
        for e, c in self.terms:
            if e == exponent:
                return c
        return RATIONALS.zero()

    @property
    def constant_term(self):
        return self.coefficient(QQ.zero)

    @property
    def order(self):
        return ps_ord(self)

    # Arithmetic

    def __add__(self, other):
        other = _series(other)
        if other is None:
            return NotImplemented
        return ps_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _series(other)
        if other is None:
            return NotImplemented
        return ps_sub(self, other)

    def __rsub__(self, other):
        return ps_neg(self) + other

    def __mul__(self, other):
        other = _series(other)
        if other is None:
            return NotImplemented
        return ps_mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return ps_neg(self)

    def __pow__(self, k):
        return ps_pow(self, k)

    def __eq__(self, other):
        other = _series(other)
        if other is None:
            return NotImplemented
        if self.precision != other.precision or len(self.terms) != len(other.terms):
            return False
        return all(ea == eb and ca == cb for (ea, ca), (eb, cb) in zip(self.terms, other.terms))

    __hash__ = None

    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"PuiseuxSeries({self})"


def _series(value):
    if isinstance(value, PuiseuxSeries):
        return value
    try:
        return PuiseuxSeries.constant(value)
    except Exception:
        return None


@dataclass(frozen=True)
class Order:
    """An order of vanishing; value None is +infinity (the exact zero series)"""

    value: object
    # False when value is only a lower bound
    exact: bool = True

    @property
    def is_infinite(self):
        return self.value is None

    def at_least(self, bound):
        return self.is_infinite or self.value >= bound

    def __str__(self):
        if self.is_infinite:
            return "EXACT-ZERO"
        if not self.exact:
            return f">= {format_rational(self.value)}"
        return format_rational(self.value)


def ps_ord(a):
    if a.terms:
        return Order(a.terms[0][0])
    if a.is_exact:
        return Order(None)
    return Order(a.precision, exact=False)


def _low(a):
    """Lowest exponent that may be nonzero; None for the exact zero series"""
    if a.terms:
        return a.terms[0][0]
    return a.precision


def _add_bound(p, q):
    if p is None or q is None:
        return None
    return p + q


def _min_bound(*bounds):
    known = [b for b in bounds if b is not None]
    return min(known) if known else None


def ps_add(a, b):
    return PuiseuxSeries.build(chain(a.terms, b.terms), _min_bound(a.precision, b.precision))


def ps_neg(a):
    return PuiseuxSeries(tuple((e, -c) for e, c in a.terms), a.precision)


def ps_sub(a, b):
    return ps_add(a, ps_neg(b))


def ps_mul(a, b):
    if a.is_exact_zero or b.is_exact_zero:
        return PuiseuxSeries.zero()
    precision = _min_bound(_add_bound(a.precision, _low(b)), _add_bound(b.precision, _low(a)))
    pairs = (
        (ea + eb, ca * cb)
        for ea, ca in a.terms
        for eb, cb in b.terms
        if precision is None or ea + eb < precision
    )
    return PuiseuxSeries.build(pairs, precision)


def ps_arith(a, b, op):
    """Ring operation on two series with the tightest sound truncation"""
    if op == "add":
        return ps_add(a, b)
    if op == "sub":
        return ps_sub(a, b)
    if op == "mul":
        return ps_mul(a, b)
    raise ValueError(f"unknown series operation {op!r}")


def ps_scale(a, c):
    c = _coefficient(c)
    if c.is_zero:
        return PuiseuxSeries.zero()
    return PuiseuxSeries(tuple((e, x * c) for e, x in a.terms), a.precision)


def ps_shift(a, exponent):
    """Multiply by t^exponent"""
    exponent = QQ.convert(exponent)
    return PuiseuxSeries(
        tuple((e + exponent, c) for e, c in a.terms),
        _add_bound(a.precision, exponent),
    )


def ps_truncate(a, precision):
    if precision is None:
        return a
    return PuiseuxSeries.build(a.terms, _min_bound(a.precision, QQ.convert(precision)))


def ps_pow(a, k):
    if k < 0:
        return ps_pow(ps_invert(a), -k)
    result, base = PuiseuxSeries.constant(1), a
    while k:
        if k & 1:
            result = ps_mul(result, base)
        k >>= 1
        if k:
            base = ps_mul(base, base)
    return result


def ps_invert(a, order=None):
    """
    Multiplicative inverse. An exact input with more than one term has an
    infinite inverse, which is truncated at the target order.
    """
    if not a.terms:
        if a.is_exact:
            raise SeriesZeroDivision("inverse of the zero series")
        raise IndeterminateOrder(f"inverse of O(t^{format_rational(a.precision)}): leading term unknown")
    v, lead = a.terms[0]
    lead_inverse = lead.inverse()
    if len(a.terms) == 1 and a.is_exact:
        return PuiseuxSeries(((-v, lead_inverse),))

    # a = lead * t^v * (1 + rest), invert 1 + rest geometrically
    bound = a.precision - v if not a.is_exact else QQ.convert(resolve("ORDER", order)) + v
    rest = PuiseuxSeries.build(((e - v, c * lead_inverse) for e, c in a.terms[1:]), bound)
    negated = ps_neg(rest)
    total = power = PuiseuxSeries.constant(1)
    while True:
        power = ps_truncate(ps_mul(power, negated), bound)
        if not power.terms:
            break
        total = ps_add(total, power)
    total = ps_truncate(total, bound)
    return ps_shift(ps_scale(total, lead_inverse), -v)


def ps_substitute_power(a, r):
    """Substitute t -> t^r for a positive rational r"""
    r = QQ.convert(r)
    if r <= 0:
        raise ValueError("substitution exponent must be positive")
    return PuiseuxSeries(
        tuple((e * r, c) for e, c in a.terms),
        None if a.precision is None else a.precision * r,
    )


def ps_ramify(a, m):
    """Substitute t -> t^m"""
    if int(m) != m or m < 1:
        raise ValueError("ramification must be a positive integer")
    return ps_substitute_power(a, int(m))


def exponent_denominators(a):
    return {int(QQ.denom(e)) for e, _ in a.terms}


def ps_has_integral_exponents(a, order):
    """True when every stored exponent below order is an integer"""
    return all(QQ.denom(e) == 1 for e, _ in a.terms if e < order)


def ps_conjugate(a):
    """
    The series obtained by taking the other real root t^(1/e) -> -t^(1/e)
    when the ramification index e is even.
    """
    e = a.ramification_index
    if e % 2:
        return a
    terms = []
    for exponent, c in a.terms:
        k = int(exponent * e)
        terms.append((exponent, -c if k % 2 else c))
    return PuiseuxSeries(tuple(terms), a.precision)


def ps_agree(a, b):
    """Equal up to the common sound truncation"""
    return not ps_sub(a, b).terms


def ps_evaluate(coefficients, y):
    """Horner evaluation of sum_j coefficients[j] * y^j"""
    result = PuiseuxSeries.zero()
    for c in reversed(coefficients):
        result = ps_add(ps_mul(result, y), c)
    return result


# Canonical text

def format_power(exponent):
    if exponent == 1:
        return "t"
    if QQ.denom(exponent) == 1 and exponent > 0:
        return f"t^{format_rational(exponent)}"
    return f"t^({format_rational(exponent)})"


def format_series(a):
    pieces = []
    for exponent, c in a.terms:
        negative = c.is_constant and c.constant_value < 0
        size = -c if negative else c
        if exponent == 0:
            body = str(size)
        elif size.is_constant and size.constant_value == 1:
            body = format_power(exponent)
        else:
            body = f"{size}*{format_power(exponent)}"
        pieces.append((negative, body))
    if not a.is_exact:
        pieces.append((False, "O(1)" if a.precision == 0 else f"O({format_power(a.precision)})"))
    if not pieces:
        return "0"
    negative, body = pieces[0]
    text = f"-{body}" if negative else body
    for negative, body in pieces[1:]:
        text += f" - {body}" if negative else f" + {body}"
    return text
