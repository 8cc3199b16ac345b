"""
Lexer and recursive-descent parser for session text.

Statements end with ``;`` and ``#`` starts a comment running to the end of
the line. Expressions use ``+ - * / ^`` and parentheses; what a name or a
division means depends on where the expression sits (a polynomial, a
rational function, a relation in T, or a Puiseux series in t).
"""
import logging
import re
from dataclasses import dataclass

from sympy.polys.domains import QQ

from exact_arith.algebraic import RealAlgebraic
from exact_arith.exceptions import ZeroPolynomialError
from exact_arith.fields import FieldElement
from exact_arith.polys import UNIVARIATE, count_roots, value_at
from geometry.arcs import Arc
from geometry.exceptions import InvalidArc
from geometry.varieties import RationalFn, Variety, make_point
from puiseux.newton import BIVARIATE
from puiseux.series import PuiseuxSeries, ps_add, ps_mul, ps_neg, ps_pow, ps_scale, ps_sub
from substitution.lifting import LIFT_VARIABLE

from .exceptions import SessionError
from .session import QUERY_KINDS, SETTABLE, Query, Ref, Session

logger = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(
    r"""
    (?P<space>[ \t]+)
    | (?P<newline>\n)
    | (?P<comment>\#[^\n]*)
    | (?P<number>[0-9]+)
    | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<symbol>[()\[\],;=+\-*/^])
    """,
    re.VERBOSE,
)

OPERATORS = ("+", "-", "*", "/", "^")

RESERVED = frozenset(
    {"vars", "variety", "function", "arc", "relation", "set", "along", "at", "budget", "order", "arcs"}
    | set(QUERY_KINDS)
    | {"t", LIFT_VARIABLE, "root", "O"}
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text):
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    tokens, line, start, position = [], 1, 0, 0
    while position < len(text):
        match = TOKEN_PATTERN.match(text, position)
        if match is None:
            char = text[position]
            problem = "non-ASCII character" if ord(char) > 127 else f"unexpected character {char!r}"
            raise SessionError(problem, line=line, column=position - start + 1)
        kind = match.lastgroup
        if kind == "newline":
            line, start = line + 1, match.end()
        elif kind not in ("space", "comment"):
            tokens.append(Token(kind, match.group(), line, position - start + 1))
        position = match.end()
    tokens.append(Token("end", "", line, position - start + 1))
    return tokens


# Expression algebras: what numbers, names, division and powers mean


class PolynomialAlgebra:
    """Polynomials over QQ; division by nonzero constants only"""

    what = "polynomial"

    def __init__(self, ring):
        self.ring = ring
        self.gens = {str(s): g for s, g in zip(ring.symbols, ring.gens)}

    def number(self, value):
        return self.ring(value)

    def name(self, parser, token):
        if token.text not in self.gens:
            raise parser.error(f"undeclared name {token.text!r}", "undeclared", token)
        return self.gens[token.text]

    def call(self, parser, token):
        raise parser.error(f"{token.text}(...) is not allowed in a {self.what}", "syntax", token)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div(self, parser, a, b, token):
        if not b.is_ground:
            raise parser.error(f"division by a non-constant in a {self.what}", "syntax", token)
        if not b:
            raise parser.error("division by zero", "syntax", token)
        return a.quo_ground(b.LC)

    def power(self, parser, base, exponent, token):
        if QQ.denom(exponent) != 1 or exponent < 0:
            raise parser.error(f"exponents in a {self.what} are nonnegative integers", "exponent", token)
        return base ** int(exponent)


class RationalAlgebra(PolynomialAlgebra):
    """(numerator, denominator) pairs, kept without cancellation"""

    what = "rational function"

    def number(self, value):
        return self.ring(value), self.ring.one

    def name(self, parser, token):
        return super().name(parser, token), self.ring.one

    def add(self, a, b):
        if a[1] == b[1]:
            return a[0] + b[0], a[1]
        return a[0] * b[1] + b[0] * a[1], a[1] * b[1]

    def sub(self, a, b):
        if a[1] == b[1]:
            return a[0] - b[0], a[1]
        return a[0] * b[1] - b[0] * a[1], a[1] * b[1]

    def neg(self, a):
        return -a[0], a[1]

    def mul(self, a, b):
        return a[0] * b[0], a[1] * b[1]

    def div(self, parser, a, b, token):
        if not b[0]:
            raise parser.error("division by zero", "syntax", token)
        if b[0].is_ground and b[1].is_ground:
            # constant divisors fold into the numerator
            return a[0] * (b[1].LC / b[0].LC), a[1]
        return a[0] * b[1], a[1] * b[0]

    def power(self, parser, base, exponent, token):
        if QQ.denom(exponent) != 1 or exponent < 0:
            raise parser.error("exponents in a rational function are nonnegative integers", "exponent", token)
        k = int(exponent)
        return base[0] ** k, base[1] ** k


class SeriesAlgebra:
    """Puiseux series in t, with root(...) coefficients and O(...) tails"""

    what = "series"

    def number(self, value):
        return PuiseuxSeries.constant(value)

    def name(self, parser, token):
        if token.text != "t":
            raise parser.error(f"series are written in t, not {token.text!r}", "undeclared", token)
        return PuiseuxSeries.monomial(1, 1)

    def call(self, parser, token):
        if token.text == "root":
            return PuiseuxSeries.constant(parser.root_literal())
        if token.text == "O":
            return parser.tail_literal()
        raise parser.error(f"unknown function {token.text!r}", "syntax", token)

    add = staticmethod(ps_add)
    sub = staticmethod(ps_sub)
    neg = staticmethod(ps_neg)
    mul = staticmethod(ps_mul)

    def div(self, parser, a, b, token):
        if not b.is_exact or any(e != 0 for e, _ in b.terms):
            raise parser.error("series can only be divided by constants", "syntax", token)
        if not b.terms:
            raise parser.error("division by zero", "syntax", token)
        return ps_scale(a, b.constant_term.inverse())

    def power(self, parser, base, exponent, token):
        if base.is_exact and len(base.terms) == 1 and base.terms[0][1] == 1:
            return PuiseuxSeries.monomial(1, base.terms[0][0] * exponent)
        if QQ.denom(exponent) != 1 or exponent < 0:
            raise parser.error("only powers of t take fractional or negative exponents", "exponent", token)
        return ps_pow(base, int(exponent))


class Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.index = 0
        self.session = Session()

    # Token plumbing

    def peek(self, offset=0):
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def advance(self):
        token = self.peek()
        self.index += 1
        return token

    def at(self, text):
        token = self.peek()
        return token.kind in ("name", "symbol") and token.text == text

    def accept(self, text):
        if self.at(text):
            return self.advance()
        return None

    def expect(self, text):
        if not self.at(text):
            found = self.peek().text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def error(self, message, code="syntax", token=None):
        token = token or self.peek()
        return SessionError(message, code=code, line=token.line, column=token.column)

    def expect_name(self):
        token = self.peek()
        if token.kind != "name":
            raise self.error(f"expected a name, found {token.text or 'end of input'!r}")
        return self.advance()

    def positive_integer(self):
        token = self.peek()
        if token.kind != "number" or int(token.text) < 1:
            raise self.error("expected a positive integer")
        self.advance()
        return int(token.text)

    # Statements

    def parse(self):
        while self.peek().kind != "end":
            self.statement()
        logger.debug("parsed %d queries", len(self.session.queries))
        return self.session

    def statement(self):
        token = self.expect_name()
        keyword = token.text
        if keyword == "vars":
            self.vars_statement(token)
        elif keyword == "variety":
            self.variety_statement(token)
        elif keyword == "function":
            name = self.declaration_name()
            self.session.functions[name] = self.rational_expression()
        elif keyword == "arc":
            name = self.declaration_name(needs_ring=False)
            self.session.arcs[name] = self.arc_literal(name)
        elif keyword == "relation":
            name = self.declaration_name()
            self.session.relations[name] = self.polynomial(self.relation_ring())
        elif keyword == "set":
            self.set_statement()
        elif keyword in QUERY_KINDS:
            self.session.queries.append(Query(keyword, getattr(self, f"query_{keyword}")(), token.line))
        else:
            raise self.error(f"unknown statement {keyword!r}", token=token)
        self.expect(";")

    def vars_statement(self, token):
        if self.session.names:
            raise self.error("variables are already declared", "duplicate", token)
        names = []
        while self.peek().kind == "name":
            name_token = self.advance()
            self.check_new_name(name_token, names)
            names.append(name_token.text)
        if not names:
            raise self.error("vars needs at least one name")
        self.session.names = tuple(names)

    def variety_statement(self, token):
        if self.session.variety is not None:
            raise self.error("a session has exactly one variety", "duplicate", token)
        ring = self.ring()
        polys = [self.polynomial(ring)]
        while self.accept(","):
            polys.append(self.polynomial(ring))
        self.session.variety = Variety.from_polys(ring, polys)

    def set_statement(self):
        token = self.expect_name()
        if token.text not in SETTABLE:
            raise self.error(f"unknown option {token.text!r}", token=token)
        value = self.positive_integer()
        self.session.queries.append(Query("set", {"option": token.text, "value": value}, token.line))

    def declaration_name(self, needs_ring=True):
        token = self.expect_name()
        self.check_new_name(token)
        if needs_ring:
            self.ring()
        self.expect("=")
        return token.text

    def check_new_name(self, token, pending=()):
        if token.text in RESERVED:
            raise self.error(f"{token.text!r} is a reserved word", token=token)
        if token.text in pending or self.session.declared(token.text):
            raise self.error(f"{token.text!r} is already declared", "duplicate", token)

    def ring(self):
        if not self.session.names:
            raise self.error("no variables declared", "undeclared")
        return self.session.ring

    def relation_ring(self):
        self.ring()
        return self.session.relation_ring

    # Queries

    def query_limit(self):
        return {"function": self.function_operand(), "arc": self.along()}

    def query_lift(self):
        return {"relation": self.relation_operand(), "arc": self.along()}

    def query_pointlift(self):
        relation = self.relation_operand()
        self.expect("at")
        return {"relation": relation, "point": self.point()}

    def query_witness(self):
        function = self.function_operand()
        self.expect("at")
        point = self.point()
        budget = self.positive_integer() if self.accept("budget") else None
        return {"function": function, "point": point, "budget": budget}

    def query_branches(self):
        relation = self.polynomial(BIVARIATE)
        order = self.positive_integer() if self.accept("order") else None
        return {"relation": relation, "order": order}

    def query_verify(self):
        return {"arc": self.arc_operand()}

    def query_lojprobe(self):
        function = self.function_operand()
        self.expect("at")
        point = self.point()
        self.expect("arcs")
        return {"function": function, "point": point, "arcs": self.arc_names()}

    def query_zeroset(self):
        function = self.function_operand()
        self.expect("arcs")
        return {"function": function, "arcs": self.arc_names()}

    def query_singular(self):
        self.ring()
        return {}

    def query_slice(self):
        self.expect("at")
        point = self.point()
        self.expect("along")
        d1 = self.vector()
        d2 = self.vector() if self.at("(") else None
        return {"point": point, "d1": d1, "d2": d2}

    def query_extend(self):
        return {"function": self.function_operand(), "arc": self.along()}

    # Operands

    def along(self):
        self.expect("along")
        return self.arc_operand()

    def is_reference(self, table):
        token = self.peek()
        return token.kind == "name" and token.text in table and self.peek(1).text not in OPERATORS

    def function_operand(self):
        if self.is_reference(self.session.functions):
            token = self.advance()
            return Ref(token.text, self.session.functions[token.text])
        return self.rational_expression()

    def relation_operand(self):
        if self.is_reference(self.session.relations):
            token = self.advance()
            return Ref(token.text, self.session.relations[token.text])
        return self.polynomial(self.relation_ring())

    def arc_operand(self):
        if self.at("("):
            return self.arc_literal()
        token = self.expect_name()
        if token.text not in self.session.arcs:
            raise self.error(f"undeclared arc {token.text!r}", "undeclared", token)
        return Ref(token.text, self.session.arcs[token.text])

    def arc_names(self):
        refs = []
        while self.peek().kind == "name":
            token = self.advance()
            if token.text not in self.session.arcs:
                raise self.error(f"undeclared arc {token.text!r}", "undeclared", token)
            refs.append(Ref(token.text, self.session.arcs[token.text]))
        if not refs:
            raise self.error("expected at least one arc name")
        return tuple(refs)

    def rational_expression(self):
        token = self.peek()
        numerator, denominator = self.expression(RationalAlgebra(self.ring()))
        try:
            return RationalFn(numerator, denominator)
        except ZeroPolynomialError:
            raise self.error("the denominator is zero", token=token) from None

    def polynomial(self, ring):
        return self.expression(PolynomialAlgebra(ring))

    def tuple_of(self, item):
        start = self.expect("(")
        items = [item()]
        while self.accept(","):
            items.append(item())
        self.expect(")")
        return start, items

    def arc_literal(self, name=""):
        start, components = self.tuple_of(lambda: self.expression(SeriesAlgebra()))
        self.check_arity(len(components), "arc", start)
        try:
            return Arc(tuple(components), name)
        except InvalidArc as error:
            raise self.error(str(error), "exponent", start) from None

    def constant(self):
        token = self.peek()
        value = self.expression(SeriesAlgebra())
        if not value.is_exact or any(e != 0 for e, _ in value.terms):
            raise self.error("expected a constant", token=token)
        return value.constant_term

    def point(self):
        start, values = self.tuple_of(self.constant)
        self.check_arity(len(values), "point", start)
        return make_point(values)

    def vector(self):
        def rational():
            token = self.peek()
            value = self.constant()
            if not value.is_constant:
                raise self.error("direction entries are rational", token=token)
            return value.constant_value

        start, values = self.tuple_of(rational)
        self.check_arity(len(values), "direction", start)
        if not any(values):
            raise self.error("direction is zero", token=start)
        return tuple(values)

    def check_arity(self, got, what, token):
        expected = len(self.ring().symbols)
        if got != expected:
            raise self.error(f"{what} has {got} coordinates, expected {expected}", "arity", token)

    def root_literal(self):
        """The body of root(<poly in T>, [lo, hi]), after the name"""
        start = self.expect("(")
        poly = self.polynomial(UNIVARIATE)
        self.expect(",")
        self.expect("[")
        lo = self.signed_rational()
        self.expect(",")
        hi = self.signed_rational()
        self.expect("]")
        self.expect(")")
        if poly.is_ground:
            raise self.error("root needs a nonconstant polynomial", token=start)
        poly = poly.sqf_part()
        if not lo < hi or value_at(poly, lo) == 0 or value_at(poly, hi) == 0 or count_roots(poly, lo, hi) != 1:
            raise self.error("the interval must isolate exactly one root", token=start)
        return FieldElement.from_algebraic(RealAlgebraic.from_root(poly, lo, hi))

    def tail_literal(self):
        """The body of O(t^q), after the name"""
        start = self.expect("(")
        bound = self.expression(SeriesAlgebra())
        self.expect(")")
        if bound.is_exact and not bound.terms:
            raise self.error("O(...) needs a power of t", "exponent", start)
        if not bound.is_exact or len(bound.terms) != 1 or bound.terms[0][1] != 1:
            raise self.error("O(...) takes a single power of t", "exponent", start)
        return PuiseuxSeries.zero(precision=bound.terms[0][0])

    def signed_rational(self):
        negative = self.accept("-") is not None
        value = QQ(self.natural())
        if self.accept("/"):
            token = self.peek()
            denominator = self.natural()
            if denominator == 0:
                raise self.error("division by zero", token=token)
            value /= denominator
        return -value if negative else value

    def natural(self):
        token = self.peek()
        if token.kind != "number":
            raise self.error("expected a number")
        self.advance()
        return int(token.text)

    # Expressions

    def expression(self, algebra):
        if self.accept("-"):
            value = algebra.neg(self.term(algebra))
        else:
            self.accept("+")
            value = self.term(algebra)
        while self.at("+") or self.at("-"):
            op = self.advance().text
            right = self.term(algebra)
            value = algebra.add(value, right) if op == "+" else algebra.sub(value, right)
        return value

    def term(self, algebra):
        value = self.factor(algebra)
        while self.at("*") or self.at("/"):
            op = self.advance()
            right = self.factor(algebra)
            value = algebra.mul(value, right) if op.text == "*" else algebra.div(self, value, right, op)
        return value

    def factor(self, algebra):
        value = self.base(algebra)
        if self.at("^"):
            caret = self.advance()
            value = algebra.power(self, value, self.exponent(), caret)
        return value

    def base(self, algebra):
        token = self.peek()
        if token.kind == "number":
            self.advance()
            return algebra.number(QQ(int(token.text)))
        if token.kind == "name":
            self.advance()
            if self.at("("):
                return algebra.call(self, token)
            return algebra.name(self, token)
        if self.accept("("):
            value = self.expression(algebra)
            self.expect(")")
            return value
        raise self.error(f"unexpected {token.text or 'end of input'!r}")

    def exponent(self):
        """An exponent: an integer, or (p/q) with optional sign"""
        token = self.peek()
        if token.kind == "number":
            self.advance()
            return QQ(int(token.text))
        if not self.accept("("):
            raise self.error("malformed exponent", "exponent", token)
        negative = self.accept("-") is not None
        if self.peek().kind != "number":
            raise self.error("malformed exponent", "exponent", token)
        value = QQ(self.natural())
        if self.accept("/"):
            if self.peek().kind != "number":
                raise self.error("malformed exponent", "exponent", token)
            denominator = self.natural()
            if denominator == 0:
                raise self.error("exponent has a zero denominator", "exponent", token)
            value /= denominator
        self.expect(")")
        return -value if negative else value


def parse_session(text):
    return Parser(text).parse()


def read_session(path):
    """Session text from a file: 7-bit ASCII, any line ending"""
    with open(path, encoding="ascii", newline=None) as handle:
        return handle.read()
