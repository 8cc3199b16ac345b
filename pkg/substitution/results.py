from dataclasses import dataclass, field
from math import lcm

from django.db.models import TextChoices

from exact_arith.polys import format_rational


class LimitKind(TextChoices):
    FINITE = "FINITE", "Finite limit"
    DIVERGES = "DIVERGES", "Diverges"
    POLE_ARC = "POLE-ARC", "Arc inside the pole set"


class WitnessOutcome(TextChoices):
    TWO_LIMITS = "TWO-LIMITS", "Two different limits"
    DIVERGES = "DIVERGES", "Diverges along an arc"
    POLE_ARC = "POLE-ARC", "Only pole arcs found"
    NONE_FOUND = "NONE-FOUND", "No witness within budget"


class Containment(TextChoices):
    PASS = "PASS", "Pass"
    VIOLATION = "VIOLATION", "Violation"


@dataclass(frozen=True)
class ArcLimit:
    kind: str
    value: object = None
    sign: int = 0
    series: object = None

    @property
    def is_finite(self):
        return self.kind == LimitKind.FINITE

    def __str__(self):
        if self.kind == LimitKind.FINITE:
            return f"FINITE({self.value})"
        if self.kind == LimitKind.DIVERGES:
            return f"DIVERGES({'+' if self.sign > 0 else '-'})"
        return str(LimitKind.POLE_ARC.value)


@dataclass(frozen=True)
class LiftingReport:
    relation: object
    arc: object
    liftings: tuple
    non_liftings: tuple
    # target order in the ramified parameter
    order: object
    ramification: int = 1
    squarefree_reduced: bool = False

    @property
    def count(self):
        return len(self.liftings)

    @property
    def lifting_index(self):
        """lcm of the exponent denominators of the liftings"""
        if not self.liftings:
            return self.ramification
        return lcm(*(s.ramification_index for s in self.liftings))


@dataclass(frozen=True)
class WitnessReport:
    outcome: str
    # witnessing arcs; None stands for the value at the point itself
    arcs: tuple = ()
    limits: tuple = ()
    observed: tuple = ()
    point_value: object = None
    slices: int = 0
    arcs_examined: int = 0
    pole_arcs: int = 0
    dropped_slices: int = 0

    @property
    def is_certificate(self):
        return self.outcome in (WitnessOutcome.TWO_LIMITS, WitnessOutcome.DIVERGES)


@dataclass(frozen=True)
class ContainmentReport:
    outcome: str
    arc: object = None
    checked: int = 0
    rejected: int = 0


@dataclass(frozen=True)
class LojEntry:
    arc: object
    # order of f(gamma) - f(x0); None when identically zero
    function_order: object
    distance_order: object
    # smallest N for this arc; None when unconstrained or unbounded
    need: object = None
    unbounded: bool = False

    def __str__(self):
        f = _order_text(self.function_order)
        if self.unbounded:
            verdict = "UNBOUNDED"
        elif self.need is None:
            verdict = "no constraint"
        else:
            verdict = f"N >= {self.need}"
        return f"ord(f - f(x0)) = {f}, ord(rho) = {_order_text(self.distance_order)}, {verdict}"


def _order_text(value):
    return "EXACT-ZERO" if value is None else format_rational(value)


@dataclass(frozen=True)
class LojReport:
    center: tuple
    function: object
    center_value: object
    entries: tuple = ()
    exponent: object = None
    unbounded: bool = False


@dataclass(frozen=True)
class ExtensionReport:
    function: object
    arc: object
    power: int
    relation: object
    candidates: tuple = field(default_factory=tuple)
