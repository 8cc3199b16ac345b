"""
Coefficient fields QQ(theta) for one real algebraic generator theta.

Elements are polynomials in T reduced modulo the square-free defining
polynomial of theta and stand for their value at theta. The modulus need not
be irreducible: zero tests and inverses consult theta's isolating interval
(dynamic evaluation). Towers are flattened by primitive elements.
"""
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce

from sympy.polys.domains import QQ

from . import polys
from .algebraic import RealAlgebraic, pin_root, real_roots
from .exceptions import ExactZeroDivision, RegulousError, ZeroPolynomialError
from .polys import T, UNIVARIATE

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NumberField:
    generator: RealAlgebraic
    # irrational generators adjoined so far
    depth: int = 0

    @property
    def modulus(self):
        return self.generator.minimal_poly

    @property
    def is_rational(self):
        return self.generator.is_rational

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, NumberField):
            return NotImplemented
        return self.modulus == other.modulus and self.generator == other.generator

    def __hash__(self):
        return hash(self.modulus)

    def element(self, rep):
        return FieldElement(self, rep % self.modulus)

    def constant(self, value):
        return FieldElement(self, UNIVARIATE(QQ.convert(value)))

    def zero(self):
        return self.constant(QQ.zero)

    def one(self):
        return self.constant(QQ.one)

    def theta(self):
        return self.element(T)

    def __str__(self):
        if self.is_rational:
            return "QQ"
        return f"QQ[{self.generator}]"


RATIONALS = NumberField(RealAlgebraic.from_rational(QQ.zero))


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: NumberField
    rep: object

    @classmethod
    def rational(cls, value):
        return RATIONALS.constant(value)

    @classmethod
    def from_algebraic(cls, value):
        if value.is_rational:
            return cls.rational(value.rational)
        return NumberField(value, depth=1).theta()

    @property
    def is_constant(self):
        return polys.degree(self.rep) <= 0

    @property
    def constant_value(self):
        return polys.coefficient(self.rep, 0)

    @cached_property
    def is_zero(self):
        if not self.rep:
            return True
        if self.is_constant:
            return False
        common = self.rep.gcd(self.field.modulus)
        if polys.degree(common) <= 0:
            return False
        generator = self.field.generator
        return polys.count_roots(common, generator.lo, generator.hi) >= 1

    @cached_property
    def value(self):
        """The element as a RealAlgebraic"""
        if self.is_constant:
            return RealAlgebraic.from_rational(self.constant_value)
        if self.is_zero:
            return RealAlgebraic.from_rational(QQ.zero)
        image = polys.image_polynomial(self.field.modulus, self.rep).sqf_part()
        generator = self.field.generator
        while True:
            lo, hi = polys.interval_value(self.rep, generator.lo, generator.hi)
            if (
                lo < hi
                and polys.value_at(image, lo) != 0
                and polys.value_at(image, hi) != 0
                and polys.count_roots(image, lo, hi) == 1
            ):
                return RealAlgebraic.from_root(image, lo, hi)
            generator = generator.refine()

    def sign(self):
        if self.is_zero:
            return 0
        return self.value.sign()

    def compare(self, other):
        return (self - other).sign()

    # Arithmetic

    def __add__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        field, a, b = common_field(self, other)
        return FieldElement(field, a + b)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.rep)

    def __sub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        field, a, b = common_field(self, other)
        return field.element(a * b)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self):
        if self.is_zero:
            raise ExactZeroDivision("inverse of an element equal to zero")
        if self.is_constant:
            return self.field.constant(1 / self.constant_value)
        modulus = self.field.modulus
        common = self.rep.gcd(modulus)
        if polys.degree(common) > 0:
            # theta is not a root of the common factor
            modulus = modulus.exquo(common)
        s, _, h = (self.rep % modulus).gcdex(modulus)
        return FieldElement(self.field, s * (1 / polys.coefficient(h, 0)))

    def __truediv__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero

    __hash__ = None

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"FieldElement({self})"


def _lift(value):
    if isinstance(value, FieldElement):
        return value
    if isinstance(value, RealAlgebraic):
        return FieldElement.from_algebraic(value)
    try:
        return RATIONALS.constant(value)
    except Exception:
        return None


def common_field(a, b):
    """Field holding both elements, with their representatives there"""
    if a.field is b.field or b.is_constant:
        return a.field, a.rep, b.rep
    if a.is_constant or a.field == b.field:
        return b.field, a.rep, b.rep
    join = join_fields(a.field, b.field)
    return join.field, join.embed_left(a).rep, join.embed_right(b).rep


def embed_common(elements):
    """Move elements into one common field; returns (field, embedded elements)"""
    field, embedded = RATIONALS, []
    for element in elements:
        if element.is_constant or element.field == field:
            embedded.append(FieldElement(field, element.rep))
        elif field.is_rational:
            field = element.field
            embedded = [FieldElement(field, x.rep) for x in embedded]
            embedded.append(element)
        else:
            join = join_fields(field, element.field)
            embedded = [join.embed_left(x) for x in embedded]
            embedded.append(join.embed_right(element))
            field = join.field
    return field, embedded


@dataclass(frozen=True)
class Join:
    """A field containing two others, with the images of their generators"""

    field: NumberField
    left: FieldElement
    right: FieldElement

    def embed_left(self, element):
        return self._embed(element, self.left)

    def embed_right(self, element):
        return self._embed(element, self.right)

    def _embed(self, element, image):
        if element.is_constant:
            return FieldElement(self.field, element.rep)
        result = self.field.zero()
        for c in element.rep.to_dense():
            result = result * image + c
        return result


def _multipliers():
    k = 1
    while True:
        yield k
        yield -k
        k += 1


@lru_cache(maxsize=512)
def join_fields(left, right):
    """Primitive element field containing left and right"""
    if left == right:
        theta = left.theta()
        return Join(left, theta, theta)
    if left.is_rational:
        return Join(right, right.constant(left.generator.rational), right.theta())
    if right.is_rational:
        return Join(left, left.theta(), left.constant(right.generator.rational))

    for k in _multipliers():
        combined = polys.combination_polynomial(left.modulus, right.modulus, k)
        if not combined or polys.degree(combined.gcd(combined.diff(T))) > 0:
            continue
        theta = pin_root(combined.monic(), (left.generator, right.generator), _combination(k))
        if not theta.is_rational:
            break
    field = NumberField(theta, depth=left.depth + right.depth)
    logger.debug("joined %s and %s into %s", left, right, field)

    # the left generator is the unique common root of m1(y) and m2(theta - k*y)
    theta_element = field.theta()
    first = [field.constant(polys.coefficient(left.modulus, i)) for i in range(polys.degree(left.modulus) + 1)]
    linear = [theta_element, field.constant(-k)]
    second, power = [field.zero()], [field.one()]
    for j in range(polys.degree(right.modulus) + 1):
        c = polys.coefficient(right.modulus, j)
        if c:
            second = poly_add(second, poly_scale(power, c))
        power = poly_mul(power, linear)
    common = poly_gcd(first, second)
    if len(common) != 2:
        raise RegulousError(f"primitive element of {left} and {right} does not separate the generators")
    left_image = -common[0] / common[1]
    return Join(field, left_image, theta_element - left_image * k)


def _combination(k):
    def combine(a, b):
        low, high = sorted((a[0] * k, a[1] * k))
        return b[0] + low, b[1] + high

    return combine


# Dense polynomials over a NumberField, as coefficient lists (lowest first)

def poly_strip(p):
    p = list(p)
    while p and p[-1].is_zero:
        p.pop()
    return p


def poly_add(p, q):
    if len(p) < len(q):
        p, q = q, p
    return [a + b for a, b in zip(p, q)] + list(p[len(q):])


def poly_scale(p, c):
    return [a * c for a in p]


def poly_mul(p, q):
    if not p or not q:
        return []
    product = [None] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            term = a * b
            product[i + j] = term if product[i + j] is None else product[i + j] + term
    return product


def poly_rem(p, q):
    q = poly_strip(q)
    if not q:
        raise ExactZeroDivision("polynomial division by zero")
    lead_inverse = q[-1].inverse()
    r = poly_strip(p)
    while len(r) >= len(q):
        factor = r[-1] * lead_inverse
        offset = len(r) - len(q)
        for i, c in enumerate(q[:-1]):
            r[i + offset] = r[i + offset] - factor * c
        r = poly_strip(r[:-1])
    return r


def poly_gcd(p, q):
    """Monic gcd; zero-divisor free because every zero test is exact"""
    p, q = poly_strip(p), poly_strip(q)
    while q:
        p, q = q, poly_rem(p, q)
    if not p:
        return p
    lead_inverse = p[-1].inverse()
    return [c * lead_inverse for c in p]


def poly_eval(p, x):
    result = None
    for c in reversed(p):
        result = c if result is None else result * x + c
    return result


def poly_derivative(p):
    return [c * i for i, c in enumerate(p)][1:]


@dataclass(frozen=True)
class Root:
    value: FieldElement
    multiplicity: int
    # embedding of the base field into value's field
    join: Join


def _locate(base, value):
    if value.is_rational:
        return join_fields(base, base), base.constant(value.rational)
    join = join_fields(base, NumberField(value, depth=1))
    return join, join.right


def field_real_roots(coefficients, base=None):
    """
    Real roots, with multiplicities and in increasing order, of the
    polynomial with the given coefficients (lowest degree first).
    """
    if base is None:
        base, coefficients = embed_common(coefficients)
    else:
        coefficients = [_into(base, c) for c in coefficients]
    coefficients = poly_strip(coefficients)
    if not coefficients:
        raise ZeroPolynomialError("every number is a root of the zero polynomial")
    degree = len(coefficients) - 1
    identity = join_fields(base, base)
    if degree == 0:
        return []
    if degree == 1:
        return [Root(-coefficients[0] / coefficients[1], 1, identity)]
    if all(c.is_constant for c in coefficients):
        p = UNIVARIATE.from_dict({(i,): c.constant_value for i, c in enumerate(coefficients)})
        roots = []
        for value, multiplicity in real_roots(p):
            join, image = _locate(base, value)
            roots.append(Root(image, multiplicity, join))
        return roots

    reps = [c.rep for c in coefficients]
    modulus = base.modulus
    common = reduce(lambda a, b: a.gcd(b), reps, modulus)
    if polys.degree(common) > 0:
        modulus = modulus.exquo(common)
    norm = polys.norm_polynomial(modulus, reps)
    if not norm:
        raise RegulousError("norm of a nonzero polynomial vanished")
    roots = []
    for value, _ in real_roots(norm):
        join, image = _locate(base, value)
        current = [join.embed_left(c) for c in coefficients]
        multiplicity = 0
        while len(current) > 1 and poly_eval(current, image).is_zero:
            multiplicity += 1
            current = poly_derivative(current)
        if multiplicity:
            roots.append(Root(image, multiplicity, join))
    return roots


def _into(field, element):
    if element.is_constant or element.field == field:
        return FieldElement(field, element.rep)
    raise RegulousError(f"{element} does not belong to {field}")
