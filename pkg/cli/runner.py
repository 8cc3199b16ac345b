"""
Executes a parsed session. Queries run in order; a query that fails becomes
an error block and the rest still run. `set` statements change the options
of the queries after them.
"""
import logging

from exact_arith.exceptions import RegulousError
from exact_arith.polys import format_polynomial, format_rational
from geometry.arcs import verify_arc_on_variety
from geometry.slicing import SliceSpec, arcs_through, singular_points_hint
from puiseux.newton import newton_puiseux
from regulous.conf import resolve
from substitution.along import arc_limit
from substitution.evidence import zero_containment_evidence
from substitution.extension import extend_along_pole_arc
from substitution.lifting import lift_arc, point_lift
from substitution.lojasiewicz import lojasiewicz_probe
from substitution.results import WitnessOutcome
from substitution.witness import discontinuity_witness

from .printer import INDENT, Block, Report, listing
from .session import SETTABLE, resolve_operand

logger = logging.getLogger(__name__)


def run_limit(session, args, options):
    limit = arc_limit(resolve_operand(args["function"]), resolve_operand(args["arc"]), options["order"])
    lines = [] if limit.series is None else [f"series: {limit.series}"]
    lines.append(f"limit: {limit}")
    record = {"outcome": limit.kind, "limit": str(limit), "series": None if limit.series is None else str(limit.series)}
    return lines, record


def run_lift(session, args, options):
    report = lift_arc(
        resolve_operand(args["relation"]),
        resolve_operand(args["arc"]),
        order=options["order"],
        tower_depth=options["tower_depth"],
    )
    lines = [f"ramification: {report.lifting_index}", f"order: {format_rational(report.order)}"]
    if report.squarefree_reduced:
        lines.append(f"square-free part: {format_polynomial(report.relation)}")
    lines += listing("liftings", report.liftings)
    lines += listing("non-liftings", report.non_liftings)
    record = {
        "liftings": [str(s) for s in report.liftings],
        "non_liftings": [str(s) for s in report.non_liftings],
        "ramification": report.lifting_index,
        "order": format_rational(report.order),
    }
    return lines, record


def run_pointlift(session, args, options):
    values = sorted(point_lift(resolve_operand(args["relation"]), args["point"]))
    return listing("values", values), {"values": [str(v) for v in values]}


def run_witness(session, args, options):
    budget = args["budget"] or options["budget"]
    report = discontinuity_witness(
        resolve_operand(args["function"]),
        session.space,
        args["point"],
        budget=budget,
        order=options["order"],
        workers=options["workers"],
        tower_depth=options["tower_depth"],
    )
    witnesses = [
        f"{'point' if arc is None else arc}: {limit}"
        for arc, limit in zip(report.arcs, report.limits)
    ]
    lines = [f"outcome: {report.outcome}"] + [INDENT + w for w in witnesses]
    if report.outcome == WitnessOutcome.NONE_FOUND:
        lines.append(f"observed limits: {', '.join(str(v) for v in report.observed) or 'none'}")
    lines += [
        f"slices: {report.slices}/{budget}",
        f"arcs examined: {report.arcs_examined}",
        f"pole arcs: {report.pole_arcs}",
        f"dropped slices: {report.dropped_slices}",
    ]
    record = {
        "outcome": report.outcome,
        "witnesses": witnesses,
        "observed": [str(v) for v in report.observed],
        "slices": report.slices,
        "budget": budget,
        "arcs_examined": report.arcs_examined,
        "pole_arcs": report.pole_arcs,
        "dropped_slices": report.dropped_slices,
    }
    return lines, record


def run_branches(session, args, options):
    order = args["order"] or options["order"]
    branches = newton_puiseux(args["relation"], order=order, tower_depth=options["tower_depth"])
    lines = [f"order: {order}"]
    if branches.squarefree_reduced:
        lines.append("relation reduced to its square-free part")
    lines += listing("branches", branches)
    return lines, {"order": order, "branches": [str(b) for b in branches]}


def run_verify(session, args, options):
    result = verify_arc_on_variety(resolve_operand(args["arc"]), session.space, options["order"])
    verdict = "ON-VARIETY" if result.passed else "OFF-VARIETY"
    return [f"residual: {result}", f"verdict: {verdict}"], {"outcome": verdict, "residual": str(result)}


def run_lojprobe(session, args, options):
    report = lojasiewicz_probe(
        resolve_operand(args["function"]),
        args["point"],
        [resolve_operand(a) for a in args["arcs"]],
        variety=session.space,
        order=options["order"],
    )
    entries = [f"{entry.arc.label()}: {entry}" for entry in report.entries]
    exponent = "UNBOUNDED" if report.unbounded else f"N = {report.exponent}"
    lines = [f"center value: {report.center_value}"] + [INDENT + e for e in entries] + [f"exponent: {exponent}"]
    return lines, {"outcome": exponent, "center_value": str(report.center_value), "entries": entries}


def run_zeroset(session, args, options):
    f = resolve_operand(args["function"])
    report = zero_containment_evidence(
        f.numerator,
        f.denominator,
        session.space,
        [resolve_operand(a) for a in args["arcs"]],
        order=options["order"],
    )
    lines = [f"outcome: {report.outcome}"]
    if report.arc is not None:
        lines.append(f"arc: {report.arc.label()}")
    lines += [f"checked: {report.checked}", f"rejected: {report.rejected}"]
    record = {
        "outcome": report.outcome,
        "arc": None if report.arc is None else report.arc.label(),
        "checked": report.checked,
        "rejected": report.rejected,
    }
    return lines, record


def run_singular(session, args, options):
    equations = [format_polynomial(g) for g in singular_points_hint(session.space)]
    return listing("equations", equations), {"equations": equations}


def run_slice(session, args, options):
    spec = SliceSpec(args["point"], args["d1"], args["d2"])
    arcs = arcs_through(session.space, spec, order=options["order"], tower_depth=options["tower_depth"])
    return listing("arcs", arcs), {"arcs": [str(a) for a in arcs]}


def run_extend(session, args, options):
    report = extend_along_pole_arc(
        resolve_operand(args["function"]),
        session.space,
        resolve_operand(args["arc"]),
        order=options["order"],
        tower_depth=options["tower_depth"],
    )
    lines = []
    if report.relation is not None:
        lines += [f"power: {report.power}", f"relation: {format_polynomial(report.relation)}"]
    lines += listing("candidates", report.candidates)
    record = {
        "power": report.power,
        "relation": None if report.relation is None else format_polynomial(report.relation),
        "candidates": [str(s) for s in report.candidates],
    }
    return lines, record


HANDLERS = {
    "limit": run_limit,
    "lift": run_lift,
    "pointlift": run_pointlift,
    "witness": run_witness,
    "branches": run_branches,
    "verify": run_verify,
    "lojprobe": run_lojprobe,
    "zeroset": run_zeroset,
    "singular": run_singular,
    "slice": run_slice,
    "extend": run_extend,
}


def run_session(session, order=None, budget=None, tower_depth=None, workers=None):
    options = {
        "order": resolve("ORDER", order),
        "budget": resolve("BUDGET", budget),
        "tower_depth": resolve("TOWER_DEPTH", tower_depth),
        "workers": resolve("WORKERS", workers),
    }
    blocks = []
    for query in session.queries:
        if query.kind == "set":
            options[SETTABLE[query.args["option"]]] = query.args["value"]
            continue
        index = len(blocks) + 1
        echo = str(query)
        try:
            lines, record = HANDLERS[query.kind](session, query.args, options)
        except (RegulousError, ValueError, ZeroDivisionError) as error:
            logger.warning("query %d (%s) failed: %s", index, echo, error)
            blocks.append(Block.failure(index, echo, query.kind, error))
            continue
        except Exception as error:
            logger.exception("query %d (%s) crashed", index, echo)
            blocks.append(Block.failure(index, echo, query.kind, error))
            continue
        blocks.append(Block(index, echo, query.kind, tuple(lines), record))
    return Report(tuple(blocks))
