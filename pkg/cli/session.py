"""
Parsed sessions. A session prints back to canonical text; two sessions are
equal when their canonical texts are.
"""
from dataclasses import dataclass, field

from exact_arith.polys import format_polynomial, format_rational, polynomial_ring
from geometry.varieties import Variety, format_point
from substitution.lifting import relation_ring

QUERY_KINDS = (
    "limit",
    "lift",
    "pointlift",
    "witness",
    "branches",
    "verify",
    "lojprobe",
    "zeroset",
    "singular",
    "slice",
    "extend",
)

# `set` statement name -> run option
SETTABLE = {"order": "order", "budget": "budget", "towerdepth": "tower_depth"}


@dataclass(frozen=True)
class Ref:
    """A declared name used as an operand"""

    name: str
    value: object

    def __str__(self):
        return self.name


def resolve_operand(operand):
    return operand.value if isinstance(operand, Ref) else operand


def format_vector(v):
    return "(" + ", ".join(format_rational(c) for c in v) + ")"


def _text(operand):
    if isinstance(operand, Ref):
        return operand.name
    if hasattr(operand, "ring"):
        return format_polynomial(operand)
    return str(operand)


def _witness(a):
    text = f"witness {_text(a['function'])} at {format_point(a['point'])}"
    return text if a["budget"] is None else f"{text} budget {a['budget']}"


def _branches(a):
    text = f"branches {format_polynomial(a['relation'])}"
    return text if a["order"] is None else f"{text} order {a['order']}"


def _slice(a):
    text = f"slice at {format_point(a['point'])} along {format_vector(a['d1'])}"
    return text if a["d2"] is None else f"{text} {format_vector(a['d2'])}"


QUERY_FORMATS = {
    "limit": lambda a: f"limit {_text(a['function'])} along {_text(a['arc'])}",
    "lift": lambda a: f"lift {_text(a['relation'])} along {_text(a['arc'])}",
    "pointlift": lambda a: f"pointlift {_text(a['relation'])} at {format_point(a['point'])}",
    "witness": _witness,
    "branches": _branches,
    "verify": lambda a: f"verify {_text(a['arc'])}",
    "lojprobe": lambda a: (
        f"lojprobe {_text(a['function'])} at {format_point(a['point'])} "
        f"arcs {' '.join(r.name for r in a['arcs'])}"
    ),
    "zeroset": lambda a: f"zeroset {_text(a['function'])} arcs {' '.join(r.name for r in a['arcs'])}",
    "singular": lambda a: "singular",
    "slice": _slice,
    "extend": lambda a: f"extend {_text(a['function'])} along {_text(a['arc'])}",
    "set": lambda a: f"set {a['option']} {a['value']}",
}


@dataclass
class Query:
    kind: str
    args: dict = field(default_factory=dict)
    # source line, 0 for queries built in code
    line: int = 0

    def __str__(self):
        return QUERY_FORMATS[self.kind](self.args)


@dataclass(eq=False)
class Session:
    names: tuple = ()
    variety: Variety = None
    functions: dict = field(default_factory=dict)
    arcs: dict = field(default_factory=dict)
    relations: dict = field(default_factory=dict)
    queries: list = field(default_factory=list)

    @property
    def ring(self):
        return polynomial_ring(self.names)

    @property
    def relation_ring(self):
        return relation_ring(self.names)

    @property
    def space(self):
        """The declared variety, or the whole space of the declared variables"""
        if self.variety is not None:
            return self.variety
        return Variety.full_space(self.names)

    def declared(self, name):
        return name in self.names or name in self.functions or name in self.arcs or name in self.relations

    def to_text(self):
        lines = []
        if self.names:
            lines.append(f"vars {' '.join(self.names)};")
        if self.variety is not None and self.variety.polys:
            lines.append(f"variety {self.variety};")
        lines.extend(f"function {name} = {f};" for name, f in self.functions.items())
        lines.extend(f"arc {name} = {arc};" for name, arc in self.arcs.items())
        lines.extend(f"relation {name} = {format_polynomial(p)};" for name, p in self.relations.items())
        lines.extend(f"{query};" for query in self.queries)
        return "\n".join(lines) + "\n" if lines else ""

    def __eq__(self, other):
        if not isinstance(other, Session):
            return NotImplemented
        return self.to_text() == other.to_text()

    __hash__ = None

    def __str__(self):
        return self.to_text()
