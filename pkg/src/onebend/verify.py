"""Independent exact auditor for drawings.

Deliberately self-contained: the intersection predicates here are written
against the raw coordinates and do not reuse the layout code, so a layout
bug cannot hide itself.  Every test is a sign test on rationals; there is
no tolerance anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .geometry import Point, Q

QZ = Q(0)

EXTRA_BEND = "ExtraBend"
NON_RIGHT_ANGLE = "NonRightAngle"
MULTIPLY_CROSSED = "MultiplyCrossedEdge"
NON_SIMPLE = "NonSimple"
VERTEX_ON_EDGE = "VertexOnEdge"
GRAPH_MISMATCH = "GraphMismatch"


@dataclass(frozen=True)
class CrossingRecord:
    edges: Tuple[int, int]
    point: Point
    right_angle: bool


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


@dataclass
class CrossingReport:
    crossings: List[CrossingRecord] = field(default_factory=list)
    per_edge_counts: Dict[int, int] = field(default_factory=dict)
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, detail: str):
        self.violations.append(Violation(kind, detail))


# ---- local exact predicates (independent of the layout code) ----------------


def _orient(a, b, c):
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def _on_seg(p, a, b) -> bool:
    if _orient(a, b, p) != QZ:
        return False
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def _meet(a, b, c, d):
    """('none',) | ('overlap',) | ('point', p)."""
    o1 = _orient(a, b, c)
    o2 = _orient(a, b, d)
    o3 = _orient(c, d, a)
    o4 = _orient(c, d, b)
    if o1 == QZ and o2 == QZ:
        lo1, hi1 = (a, b) if a <= b else (b, a)
        lo2, hi2 = (c, d) if c <= d else (d, c)
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo > hi:
            return ("none",)
        if lo == hi:
            return ("point", lo)
        return ("overlap",)
    if ((o1 > QZ) != (o2 > QZ)) and ((o3 > QZ) != (o4 > QZ)) \
            and QZ not in (o1, o2, o3, o4):
        rx, ry = b.x - a.x, b.y - a.y
        sx, sy = d.x - c.x, d.y - c.y
        den = rx * sy - ry * sx
        t = ((c.x - a.x) * sy - (c.y - a.y) * sx) / den
        return ("point", Point(a.x + t * rx, a.y + t * ry))
    for p, (pa, pb) in ((c, (a, b)), (d, (a, b)), (a, (c, d)), (b, (c, d))):
        if _on_seg(p, pa, pb):
            return ("point", p)
    return ("none",)


# ---- polyline bookkeeping -----------------------------------------------------


def _segments(points: Sequence[Point]):
    return [(points[i], points[i + 1]) for i in range(len(points) - 1)]


def _polyline_points(polylines: Dict[int, Sequence[Point]]):
    return {e: tuple(pts) for e, pts in polylines.items()}


def _as_raw(drawing) -> Tuple[Dict[int, Point], Dict[int, Tuple[Point, ...]]]:
    if isinstance(drawing, tuple):
        positions, polylines = drawing
    else:
        positions = drawing.positions
        polylines = {e: pl.points for e, pl in drawing.polylines.items()}
    return dict(positions), _polyline_points(polylines)


def compute_crossings(drawing) -> CrossingReport:
    """All proper intersections between polylines, with simplicity breaches
    reported; graph fidelity is not checked here."""
    positions, polylines = _as_raw(drawing)
    report = CrossingReport()
    _scan_intersections(positions, polylines, report)
    return report


def _scan_intersections(positions, polylines, report: CrossingReport):
    eids = sorted(polylines)
    pos_of_vertex = positions

    # self-checks and degenerate points
    for e in eids:
        pts = polylines[e]
        if len(pts) > 3:
            report.add(EXTRA_BEND, "edge %d has %d bends" % (e, len(pts) - 2))
        for i in range(len(pts) - 1):
            if pts[i] == pts[i + 1]:
                report.add(NON_SIMPLE, "edge %d has a zero-length segment" % e)
        if len(pts) >= 3:
            # consecutive segments may only share the bend point
            for i in range(len(pts) - 2):
                m = _meet(pts[i], pts[i + 1], pts[i + 1], pts[i + 2])
                if m[0] == "overlap":
                    report.add(NON_SIMPLE, "edge %d doubles back at a bend" % e)

    # segment index with float boxes; coordinates are divided by a common
    # power of two first so any magnitude survives the conversion
    from .geometry import scaled_float_fn

    seg_owner: List[int] = []
    seg_ab: List[Tuple[Point, Point]] = []
    coords = []
    for e in eids:
        for a, b in _segments(polylines[e]):
            seg_owner.append(e)
            seg_ab.append((a, b))
            coords.extend((a.x, a.y, b.x, b.y))
    n = len(seg_ab)
    if n == 0:
        return
    conv, _e = scaled_float_fn(coords)
    boxes = np.empty((n, 4))
    for i, (a, b) in enumerate(seg_ab):
        ax, ay, bx, by = conv(a.x), conv(a.y), conv(b.x), conv(b.y)
        boxes[i] = (min(ax, bx), min(ay, by), max(ax, bx), max(ay, by))
    pad = 1e-9 * (1.0 + np.abs(boxes).max())
    lo = boxes[:, :2] - pad
    hi = boxes[:, 2:] + pad

    terminals = {e: (polylines[e][0], polylines[e][-1]) for e in eids}
    meetings: Dict[Tuple[int, int], List[Point]] = {}

    for i in range(n):
        overlap = np.nonzero((lo[i + 1:, 0] <= hi[i, 0]) & (lo[i, 0] <= hi[i + 1:, 0])
                             & (lo[i + 1:, 1] <= hi[i, 1]) & (lo[i, 1] <= hi[i + 1:, 1]))[0]
        for off in overlap:
            j = i + 1 + off
            e1, e2 = seg_owner[i], seg_owner[j]
            if e1 == e2:
                continue
            a, b = seg_ab[i]
            c, d = seg_ab[j]
            m = _meet(a, b, c, d)
            if m[0] == "none":
                continue
            if m[0] == "overlap":
                report.add(NON_SIMPLE,
                           "edges %d and %d overlap along a segment" % (e1, e2))
                continue
            key = (min(e1, e2), max(e1, e2))
            meetings.setdefault(key, [])
            if m[1] not in meetings[key]:
                meetings[key].append(m[1])

    counts: Dict[int, int] = {e: 0 for e in eids}
    for (e1, e2), points in sorted(meetings.items()):
        if len(points) > 1:
            report.add(NON_SIMPLE,
                       "edges %d and %d share %d points" % (e1, e2, len(points)))
            continue
        x = points[0]
        t1 = x in terminals[e1]
        t2 = x in terminals[e2]
        if t1 and t2:
            continue  # common endpoint
        # must be a proper crossing: interior to one segment of each
        info1 = _point_on_polyline(x, polylines[e1])
        info2 = _point_on_polyline(x, polylines[e2])
        if info1 != "interior" or info2 != "interior":
            report.add(NON_SIMPLE,
                       "edges %d and %d touch without properly crossing at %r"
                       % (e1, e2, (str(x.x), str(x.y))))
            continue
        d1 = _segment_direction_at(x, polylines[e1])
        d2 = _segment_direction_at(x, polylines[e2])
        right = (d1.x * d2.x + d1.y * d2.y) == QZ
        report.crossings.append(CrossingRecord((e1, e2), x, right))
        counts[e1] += 1
        counts[e2] += 1
    report.per_edge_counts = counts


def _point_on_polyline(x: Point, pts: Sequence[Point]) -> str:
    """'terminal' | 'bend' | 'interior' | 'off' for a point on a polyline."""
    if x == pts[0] or x == pts[-1]:
        return "terminal"
    if any(x == p for p in pts[1:-1]):
        return "bend"
    for a, b in _segments(pts):
        if _on_seg(x, a, b):
            return "interior"
    return "off"


def _segment_direction_at(x: Point, pts: Sequence[Point]) -> Point:
    for a, b in _segments(pts):
        if _on_seg(x, a, b):
            return Point(b.x - a.x, b.y - a.y)
    raise AssertionError("crossing point not on polyline")


def verify_drawing(drawing, original) -> CrossingReport:
    """Audit the four drawing properties and graph fidelity.

    `original` is the input graph (vertex ids and edge endpoints are the
    only parts used).
    """
    positions, polylines = _as_raw(drawing)
    report = CrossingReport()

    if set(positions) != set(original.vertices):
        report.add(GRAPH_MISMATCH, "vertex sets differ")
    if set(polylines) != set(original.edges):
        report.add(GRAPH_MISMATCH, "edge sets differ")
    for e in sorted(set(polylines) & set(original.edges)):
        er = original.edges[e]
        pts = polylines[e]
        ends = {pts[0], pts[-1]}
        want = {positions.get(er.u), positions.get(er.v)}
        if ends != want:
            report.add(GRAPH_MISMATCH,
                       "edge %d endpoints do not sit on its vertices" % e)

    by_pos: Dict[Point, int] = {}
    for v in sorted(positions):
        p = positions[v]
        if p in by_pos:
            report.add(NON_SIMPLE, "vertices %d and %d coincide" % (by_pos[p], v))
        by_pos[p] = v

    _scan_intersections(positions, polylines, report)

    for rec in report.crossings:
        if not rec.right_angle:
            report.add(NON_RIGHT_ANGLE,
                       "edges %d and %d cross obliquely" % rec.edges)
    for e, c in sorted(report.per_edge_counts.items()):
        if c > 1:
            report.add(MULTIPLY_CROSSED, "edge %d crossed %d times" % (e, c))

    incident = {e: set() for e in polylines}
    for e in polylines:
        if e in original.edges:
            incident[e] = {original.edges[e].u, original.edges[e].v}
    for v in sorted(positions):
        p = positions[v]
        for e in sorted(polylines):
            if v in incident.get(e, ()):  # endpoints may of course touch
                continue
            where = _point_on_polyline(p, polylines[e])
            if where != "off":
                report.add(VERTEX_ON_EDGE,
                           "vertex %d lies on edge %d" % (v, e))
    return report
