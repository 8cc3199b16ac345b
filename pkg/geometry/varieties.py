"""Real algebraic varieties, rational functions and exact points"""
from dataclasses import dataclass

from exact_arith.exceptions import ArityMismatch, ZeroPolynomialError
from exact_arith.fields import FieldElement, embed_common
from exact_arith.polys import format_polynomial, polynomial_ring

from .exceptions import NotAHypersurface


@dataclass(frozen=True, eq=False)
class Variety:
    ring: object
    polys: tuple = ()

    @classmethod
    def full_space(cls, names):
        return cls(polynomial_ring(names))

    @classmethod
    def from_polys(cls, ring, polys):
        kept = []
        for p in polys:
            if p.ring.ngens != ring.ngens:
                raise ArityMismatch(ring.ngens, p.ring.ngens)
            p = p if p.ring == ring else ring.from_dict(dict(p))
            if p:
                kept.append(p)
        return cls(ring, tuple(kept))

    @property
    def names(self):
        return tuple(str(s) for s in self.ring.symbols)

    @property
    def arity(self):
        return self.ring.ngens

    @property
    def is_full_space(self):
        return not self.polys

    @property
    def is_hypersurface(self):
        return len(self.polys) == 1

    @property
    def hypersurface(self):
        """The single defining polynomial"""
        if not self.is_hypersurface:
            raise NotAHypersurface(f"variety has {len(self.polys)} defining polynomials, expected one")
        return self.polys[0]

    def contains(self, point):
        return all(evaluate_at(p, point).is_zero for p in self.polys)

    def __str__(self):
        if self.is_full_space:
            return f"R^{self.arity}"
        return ", ".join(format_polynomial(p) for p in self.polys)


@dataclass(frozen=True)
class RationalFn:
    numerator: object
    denominator: object

    def __post_init__(self):
        if not self.denominator:
            raise ZeroPolynomialError("rational function with a zero denominator")
        if self.numerator.ring.ngens != self.denominator.ring.ngens:
            raise ArityMismatch(self.numerator.ring.ngens, self.denominator.ring.ngens)

    @classmethod
    def polynomial(cls, p):
        return cls(p, p.ring.one)

    @property
    def arity(self):
        return self.numerator.ring.ngens

    def is_regular_at(self, point):
        return not evaluate_at(self.denominator, point).is_zero

    def value_at(self, point):
        """p(x0)/q(x0); the caller checks regularity"""
        return evaluate_at(self.numerator, point) / evaluate_at(self.denominator, point)

    def __str__(self):
        return f"({format_polynomial(self.numerator)})/({format_polynomial(self.denominator)})"


def make_point(values):
    """Exact point: coordinates moved into one common coefficient field"""
    elements = [value if isinstance(value, FieldElement) else FieldElement.rational(value) for value in values]
    _, embedded = embed_common(elements)
    return tuple(embedded)


def evaluate_at(p, point):
    if len(point) != p.ring.ngens:
        raise ArityMismatch(p.ring.ngens, len(point), what="point")
    total = FieldElement.rational(0)
    for monom, c in p.items():
        term = FieldElement.rational(c)
        for x, k in zip(point, monom):
            if k:
                term = term * x**k
        total = total + term
    return total


def format_point(point):
    return "(" + ", ".join(str(x) for x in point) + ")"
