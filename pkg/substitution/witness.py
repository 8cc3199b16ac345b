"""
Search for discontinuity certificates of a rational function at a point of
a variety: two arcs with different limits, or one arc along which the
function diverges. Slices are probed in enumeration order; with several
workers they run concurrently and are merged in that same order.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from itertools import islice

from geometry.exceptions import NotAHypersurface, PointNotOnVariety
from geometry.slicing import SliceSpec, arcs_through, slice_planes
from geometry.varieties import format_point, make_point
from puiseux.exceptions import IndeterminateOrder, TowerDepthExceeded
from regulous.conf import resolve

from .along import arc_limit, with_order_retry
from .results import ArcLimit, LimitKind, WitnessOutcome, WitnessReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlaneProbe:
    limits: tuple = ()
    dropped: bool = False


def probe_plane(f, variety, point, plane, order=None, tower_depth=None):
    """Arc limits of f along every arc found in one slice plane"""
    d1, d2 = plane
    spec = SliceSpec(point, d1, d2)

    def compute(target):
        arcs = arcs_through(variety, spec, order=target, tower_depth=tower_depth)
        return tuple((arc, arc_limit(f, arc, target)) for arc in arcs)

    try:
        return PlaneProbe(with_order_retry(compute, order))
    except (IndeterminateOrder, TowerDepthExceeded) as error:
        logger.warning("skipping slice %s: %s", spec, error)
        return PlaneProbe(dropped=True)


def discontinuity_witness(f, variety, point, budget=None, order=None, workers=None, tower_depth=None):
    budget = resolve("BUDGET", budget)
    workers = resolve("WORKERS", workers)
    point = make_point(point)
    if not variety.contains(point):
        raise PointNotOnVariety(f"{format_point(point)} is not on the variety")
    if not (variety.is_full_space or variety.is_hypersurface):
        raise NotAHypersurface("witness search slices hypersurfaces only")

    point_value = f.value_at(point) if f.is_regular_at(point) else None
    planes = list(islice(slice_planes(variety.arity), budget))
    probe = partial(probe_plane, f, variety, point, order=order, tower_depth=tower_depth)

    if workers > 1:
        executor = ThreadPoolExecutor(max_workers=workers)
        try:
            return _scan(executor.map(probe, planes), point_value, len(planes))
        finally:
            executor.shutdown(wait=True, cancel_futures=True)
    return _scan(map(probe, planes), point_value, len(planes))


def _scan(probes, point_value, total):
    observed, first = [], None
    arcs_examined = pole_arcs = dropped = 0
    point_limit = None if point_value is None else ArcLimit(LimitKind.FINITE, point_value)

    def report(outcome, arcs, limits, slices):
        return WitnessReport(
            outcome,
            tuple(arcs),
            tuple(limits),
            tuple(observed),
            point_value,
            slices,
            arcs_examined,
            pole_arcs,
            dropped,
        )

    for index, probe in enumerate(probes, start=1):
        if probe.dropped:
            dropped += 1
            continue
        for arc, limit in probe.limits:
            arcs_examined += 1
            if limit.kind == LimitKind.POLE_ARC:
                pole_arcs += 1
                continue
            if limit.kind == LimitKind.DIVERGES:
                return report(WitnessOutcome.DIVERGES, [arc], [limit], index)
            if point_limit is not None and limit.value != point_value:
                return report(WitnessOutcome.TWO_LIMITS, [None, arc], [point_limit, limit], index)
            if first is not None and first[1].value != limit.value:
                return report(WitnessOutcome.TWO_LIMITS, [first[0], arc], [first[1], limit], index)
            if first is None:
                first = (arc, limit)
                observed.append(limit.value)

    if not observed and pole_arcs:
        return report(WitnessOutcome.POLE_ARC, [], [], total)
    return report(WitnessOutcome.NONE_FOUND, [], [], total)
