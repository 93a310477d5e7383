"""Right-angle reinsertion of crossing pairs and recursive assembly of the
final drawing.

Every piece is drawn into a prescribed polygon (the root into a canonical
one, children into polygons erected on their bundle's base segment).  The
two edges of an inner crossing pair become one straight diagonal and one
one-bend polyline through the perpendicular foot, which makes the crossing
angle exactly ninety degrees in rational arithmetic.  The outer pair of a
trapezoid piece uses the fixed two-bend-total construction whose first
segments are the diagonals of the square erected on the minor base.

Child polygons shrink until exact predicates certify that the candidate
(including the outer-pair overhang for trapezoids) meets nothing already
drawn, so recursion never creates crossings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .augment import AugmentResult, augment
from .convexdraw import (TRAPEZOID, TRIANGLE, PolygonSpec, RemovedPair,
                         StraightDrawing, convex_draw, perturb_general_position,
                         strip_crossing_pairs, trapezoid_on, triangle_on)
from .decompose import Bundle, DecompTree, Piece, contract_to_gstar
from .errors import (GeometryViolation, MissingGeometry, NoValidConfiguration,
                     ZeroClearance)
from .geometry import (Point, Q, QZERO, add, bbox, cross, dist2_point_segment,
                       dist2_segments, dot, line_intersection, orient,
                       perpendicular_foot, pt, rot90, scale, seg_len2,
                       segment_meeting, strictly_inside_segment, sub, to_float)
from .model import ORIGINAL, THICK, OnePlaneGraph, rev, split_components


@dataclass(frozen=True)
class Polyline:
    edge: int
    points: Tuple[Point, ...]

    def __post_init__(self):
        assert 2 <= len(self.points) <= 3
        assert all(self.points[i] != self.points[i + 1]
                   for i in range(len(self.points) - 1))

    @property
    def bend(self) -> Optional[Point]:
        return self.points[1] if len(self.points) == 3 else None

    def segments(self):
        return [(self.points[i], self.points[i + 1])
                for i in range(len(self.points) - 1)]


@dataclass
class Drawing:
    positions: Dict[int, Point]
    polylines: Dict[int, Polyline]
    provenance: Dict[Tuple[str, int], int] = field(default_factory=dict)

    def all_points(self):
        for p in self.positions.values():
            yield p
        for pl in self.polylines.values():
            for p in pl.points:
                yield p


def _fpoint_seg(px, py, ax, ay, bx, by) -> float:
    vx, vy = bx - ax, by - ay
    den = vx * vx + vy * vy
    if den <= 0.0:
        return ((px - ax) ** 2 + (py - ay) ** 2) ** 0.5
    t = ((px - ax) * vx + (py - ay) * vy) / den
    t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
    qx, qy = ax + t * vx, ay + t * vy
    return ((px - qx) ** 2 + (py - qy) ** 2) ** 0.5


def _fseg_seg(s1, s2) -> float:
    ax, ay, bx, by = s1
    cx, cy, dx, dy = s2
    return min(_fpoint_seg(ax, ay, cx, cy, dx, dy),
               _fpoint_seg(bx, by, cx, cy, dx, dy),
               _fpoint_seg(cx, cy, ax, ay, bx, by),
               _fpoint_seg(dx, dy, ax, ay, bx, by))


class _Assembly:
    """Everything drawn so far, with a float bounding-box prefilter for the
    exact conflict predicates."""

    def __init__(self):
        self.pos: Dict[int, Point] = {}
        self.lines: Dict[int, Tuple[Point, ...]] = {}
        self.segs: List[Tuple[Point, Point]] = []
        self._seg_boxes: List[Tuple[float, float, float, float]] = []
        self._seg_xy: List[Tuple[float, float, float, float]] = []
        self.points: List[Point] = []
        self._pt_xy: List[Tuple[float, float]] = []

    def add_vertex(self, vid: int, p: Point):
        if vid in self.pos:
            assert self.pos[vid] == p, "vertex %d drawn twice" % vid
            return
        self.pos[vid] = p
        self.points.append(p)
        self._pt_xy.append((to_float(p.x), to_float(p.y)))

    def add_polyline(self, eid: int, pts: Tuple[Point, ...]):
        assert eid not in self.lines, "edge %d drawn twice" % eid
        self.lines[eid] = tuple(pts)
        for i in range(len(pts) - 1):
            a, b = pts[i], pts[i + 1]
            self.segs.append((a, b))
            ax, ay, bx, by = (to_float(a.x), to_float(a.y),
                              to_float(b.x), to_float(b.y))
            self._seg_xy.append((ax, ay, bx, by))
            self._seg_boxes.append((min(ax, bx), min(ay, by),
                                    max(ax, bx), max(ay, by)))
        if len(pts) == 3:
            self.points.append(pts[1])
            self._pt_xy.append((to_float(pts[1].x), to_float(pts[1].y)))

    def segments_near(self, box):
        x0, y0, x1, y1 = box
        pad = 1e-9 + 1e-9 * max(abs(x0), abs(y0), abs(x1), abs(y1))
        x0 -= pad; y0 -= pad; x1 += pad; y1 += pad
        for i, (sx0, sy0, sx1, sy1) in enumerate(self._seg_boxes):
            if sx1 < x0 or x1 < sx0 or sy1 < y0 or y1 < sy0:
                continue
            yield self.segs[i]

    def points_near(self, box):
        x0, y0, x1, y1 = box
        pad = 1e-9 + 1e-9 * max(abs(x0), abs(y0), abs(x1), abs(y1))
        x0 -= pad; y0 -= pad; x1 += pad; y1 += pad
        for i, (px, py) in enumerate(self._pt_xy):
            if x0 <= px <= x1 and y0 <= py <= y1:
                yield self.points[i]


def _fbox(points):
    xs = [to_float(p.x) for p in points]
    ys = [to_float(p.y) for p in points]
    return (min(xs), min(ys), max(xs), max(ys))


# ---- crossing-pair reinsertion ----------------------------------------------


def _ray_exit(face_pts: Sequence[Point], start: Point, direction: Point) -> Point:
    """First boundary point of the convex face hit by the ray start + t*dir,
    t > 0 (start lies inside or on the boundary)."""
    best_t = None
    n = len(face_pts)
    for i in range(n):
        p, q = face_pts[i], face_pts[(i + 1) % n]
        side = sub(q, p)
        den = cross(direction, side)
        if den == QZERO:
            continue
        t = cross(sub(p, start), side) / den
        if t <= QZERO:
            continue
        hit = add(start, scale(direction, t))
        mn_x, mx_x = min(p.x, q.x), max(p.x, q.x)
        mn_y, mx_y = min(p.y, q.y), max(p.y, q.y)
        if not (mn_x <= hit.x <= mx_x and mn_y <= hit.y <= mx_y):
            continue
        if best_t is None or t < best_t:
            best_t = t
    if best_t is None:
        raise GeometryViolation("perpendicular ray does not leave the face")
    return add(start, scale(direction, best_t))


def reinsert_inner_pair(quad: Sequence[Tuple[int, Point]],
                        pair: Sequence[Tuple[int, Tuple[int, int]]]
                        ) -> Tuple[Polyline, Polyline]:
    """Insert a crossing pair into a strictly convex quadrilateral: one edge
    straight along a diagonal, the other bent through the perpendicular
    foot so the crossing is exactly ninety degrees.

    `quad` lists (vertex, point) in cyclic order; `pair` lists
    (edge id, (u, v)) for the two edges (the quad's diagonals).
    """
    pos = {v: p for v, p in quad}
    ids = [v for v, _p in quad]
    diag_of = {}
    for eid, (u, v) in pair:
        if {u, v} == {ids[0], ids[2]}:
            diag_of[eid] = (ids[0], ids[2])
        elif {u, v} == {ids[1], ids[3]}:
            diag_of[eid] = (ids[1], ids[3])
        else:
            raise GeometryViolation("pair edge %d is not a quad diagonal" % eid)
    if len(diag_of) != 2:
        raise GeometryViolation("crossing pair does not span both diagonals")

    pair_list = sorted(pair)
    d2 = {eid: seg_len2(pos[dg[0]], pos[dg[1]]) for eid, dg in diag_of.items()}
    straight_order = sorted(pair_list,
                            key=lambda item: (-(d2[item[0]]), item[0]))

    face_pts = [p for _v, p in quad]
    for s_eid, s_ends in straight_order:
        a_id, c_id = diag_of[s_eid]
        a, c = pos[a_id], pos[c_id]
        b_eid, (b_u, b_v) = next(item for item in pair_list if item[0] != s_eid)
        dist = {x: dist2_point_segment(pos[x], a, c) for x in (b_u, b_v)}
        for w in sorted((b_u, b_v), key=lambda x: (-(dist[x]), x)):
            z = b_v if w == b_u else b_u
            foot = perpendicular_foot(pos[w], a, c)
            if not strictly_inside_segment(foot, a, c):
                continue
            exit_pt = _ray_exit(face_pts, foot, sub(foot, pos[w]))
            bend = add(foot, scale(sub(exit_pt, foot), Q(1, 4)))
            if bend == foot:
                continue
            assert dot(sub(bend, pos[w]), sub(c, a)) == QZERO
            meet = segment_meeting(pos[w], bend, a, c)
            if meet[0] != "point" or meet[1] != foot or not (meet[2] and meet[3]):
                continue
            if segment_meeting(bend, pos[z], a, c)[0] != "none":
                continue
            straight = Polyline(s_eid, (pos[s_ends[0]], pos[s_ends[1]]))
            bent_pts = (pos[w], bend, pos[z])
            if w != b_u:
                bent_pts = tuple(reversed(bent_pts))
            return straight, Polyline(b_eid, bent_pts)
    raise NoValidConfiguration(
        "no perpendicular-foot configuration fits the quadrilateral %r"
        % (quad,))


def reinsert_outer_pair(spec: PolygonSpec,
                        pair: Sequence[Tuple[int, Tuple[int, int]]]
                        ) -> Tuple[Polyline, Polyline]:
    """Insert the crossing pair whose endpoints are the four trapezoid
    corners: both edges get one bend, the first segments are the diagonals
    of the square erected on the minor base and cross at a right angle.

    In frame coordinates the edge from the far minor corner (s0+w, h) runs
    through the bend (s0, h+w) to the base origin; the other edge mirrors
    it.  The raise equals the minor base length, which is what makes the
    two first segments exactly perpendicular at any scale or angle.
    """
    if spec.shape != TRAPEZOID:
        raise GeometryViolation("outer pair needs a trapezoid polygon")
    idx = {v: i for i, (v, _p) in enumerate(spec.corners)}
    P = {v: p for v, p in spec.corners}
    s0, w, h = spec.s0, spec.w, spec.h
    bend_for = {frozenset((0, 2)): spec.at(s0, h + w),
                frozenset((1, 3)): spec.at(s0 + w, h + w)}

    out = []
    for eid, (u, v) in sorted(pair):
        key = frozenset((idx[u], idx[v]))
        if key not in bend_for:
            raise GeometryViolation("outer pair endpoints are not opposite corners")
        out.append(Polyline(eid, (P[u], bend_for[key], P[v])))

    seg1 = (spec.at(s0 + w, h), spec.at(s0, h + w))
    seg2 = (spec.at(s0, h), spec.at(s0 + w, h + w))
    assert dot(sub(seg1[1], seg1[0]), sub(seg2[1], seg2[0])) == QZERO
    meet = segment_meeting(seg1[0], seg1[1], seg2[0], seg2[1])
    assert meet[0] == "point" and meet[2] and meet[3]
    return out[0], out[1]


def outer_pair_geometry(spec: PolygonSpec):
    """All points and segments of the outer-pair construction for a
    candidate trapezoid (no edge identities needed)."""
    s0, w, h = spec.s0, spec.w, spec.h
    p_rm = spec.at(s0 + w, h)
    p_lm = spec.at(s0, h)
    q1 = spec.at(s0, h + w)
    q2 = spec.at(s0 + w, h + w)
    l_m = spec.corners[0][1]
    r_m = spec.corners[1][1]
    segs = [(p_rm, q1), (q1, l_m), (p_lm, q2), (q2, r_m)]
    return [q1, q2], segs


# ---- replacement-polygon fitting --------------------------------------------


def _half_pow2_below(bound2) -> object:
    """Largest power of two t with t*t <= bound2 (bound2 > 0), capped at 1/2."""
    t = Q(1, 2)
    for _ in range(4096):
        if t * t <= bound2:
            return t
        t = t / 2
    raise GeometryViolation("clearance too small to represent")


def _candidate_spec(walk_ids, pu, pv, t):
    if len(walk_ids) == 3:
        return triangle_on(walk_ids, pu, pv, t)
    return trapezoid_on(walk_ids, pu, pv, t / 2, min(Q(1, 4), t / 2))


def _candidate_geometry(spec: PolygonSpec):
    pts = spec.points
    base = {pts[0], pts[1]}
    segs = []
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        if {a, b} == base:
            continue
        segs.append((a, b))
    extra_pts = list(pts[2:])
    hull = list(pts)
    if spec.shape == TRAPEZOID:
        bends, osegs = outer_pair_geometry(spec)
        segs.extend(osegs)
        extra_pts.extend(bends)
        hull = [pts[0], pts[1], spec.at(spec.s0 + spec.w, spec.h + spec.w),
                spec.at(spec.s0, spec.h + spec.w)]
    return segs, extra_pts, hull


def _spec_conflicts(spec: PolygonSpec, assembly: _Assembly,
                    pu: Point, pv: Point) -> bool:
    segs, extra_pts, hull = _candidate_geometry(spec)
    allowed = {pu, pv}
    box = _fbox(hull + [pu, pv])
    base = {pu, pv}
    for a, b in segs:
        for p, q in assembly.segments_near(box):
            if {p, q} == base:
                continue
            meet = segment_meeting(a, b, p, q)
            if meet[0] == "none":
                continue
            if meet[0] == "overlap":
                return True
            x = meet[1]
            if x in allowed and x in (a, b) and x in (p, q):
                continue
            return True
    for p in assembly.points_near(box):
        if p in allowed:
            continue
        if _in_hull(p, hull) != "out":
            return True
    for p in extra_pts:
        # candidate corners/bends must not land on existing geometry
        pb = _fbox([p])
        for q, r in assembly.segments_near(pb):
            if {q, r} == base:
                continue
            if dist2_point_segment(p, q, r) == QZERO:
                return True
    return False


def _in_hull(p: Point, hull: Sequence[Point]) -> str:
    sign = None
    on = False
    n = len(hull)
    for i in range(n):
        o = orient(hull[i], hull[(i + 1) % n], p)
        if o == QZERO:
            mn_x, mx_x = min(hull[i].x, hull[(i + 1) % n].x), max(hull[i].x, hull[(i + 1) % n].x)
            mn_y, mx_y = min(hull[i].y, hull[(i + 1) % n].y), max(hull[i].y, hull[(i + 1) % n].y)
            if mn_x <= p.x <= mx_x and mn_y <= p.y <= mx_y:
                on = True
                continue
            return "out"
        s = o > QZERO
        if sign is None:
            sign = s
        elif s != sign:
            return "out"
    return "on" if on else "in"


def fit_replacement_polygon(walk_ids: Sequence[int], pu: Point, pv: Point,
                            assembly: _Assembly) -> PolygonSpec:
    """Polygon for a child piece erected on the base segment pu->pv,
    shrunk until exact predicates certify clearance from everything drawn.

    `walk_ids` is the child's stripped outer walk rotated base-first; its
    length (3 or 4) selects triangle versus trapezoid.
    """
    base_len2 = seg_len2(pu, pv)
    if base_len2 == QZERO:
        raise ZeroClearance("degenerate base segment")

    # minimum clearance from the base to non-incident elements: a float
    # sweep finds the near set, exact arithmetic settles the minimum
    fpu = (to_float(pu.x), to_float(pu.y))
    fpv = (to_float(pv.x), to_float(pv.y))
    fbase = (fpu[0], fpu[1], fpv[0], fpv[1])
    near_segs: List[Tuple[float, int]] = []
    fmin = None
    for i, sxy in enumerate(assembly._seg_xy):
        ends = ((sxy[0], sxy[1]), (sxy[2], sxy[3]))
        if fpu in ends or fpv in ends:
            continue  # incident (exact equality implies float equality)
        fd = _fseg_seg(fbase, sxy)
        near_segs.append((fd, i))
        if fmin is None or fd < fmin:
            fmin = fd
    near_pts: List[Tuple[float, int]] = []
    for i, fp in enumerate(assembly._pt_xy):
        if fp == fpu or fp == fpv:
            continue
        fd = _fpoint_seg(fp[0], fp[1], *fbase)
        near_pts.append((fd, i))
        if fmin is None or fd < fmin:
            fmin = fd

    best = None
    if fmin is not None:
        cutoff = fmin * 2.0 + 1e-12
        for fd, i in near_segs:
            if fd > cutoff:
                continue
            p, q = assembly.segs[i]
            if {p, q} == {pu, pv} or pu in (p, q) or pv in (p, q):
                continue
            d2 = dist2_segments(pu, pv, p, q)
            if best is None or d2 < best:
                best = d2
        for fd, i in near_pts:
            if fd > cutoff:
                continue
            p = assembly.points[i]
            if p == pu or p == pv:
                continue
            d2 = dist2_point_segment(p, pu, pv)
            if best is None or d2 < best:
                best = d2
    if best is not None and best == QZERO:
        raise ZeroClearance("base segment touches another drawing element")

    if best is None:
        t = Q(1, 2)
    else:
        # frame height t gives real height t*|base|; keep it at most half
        # the minimum clearance
        t = _half_pow2_below(best / (4 * base_len2))

    for _ in range(200):
        spec = _candidate_spec(list(walk_ids), pu, pv, t)
        if not _spec_conflicts(spec, assembly, pu, pv):
            return spec
        t = t / 2
    raise GeometryViolation("replacement polygon does not fit at any height")


# ---- recursive drawing -------------------------------------------------------


ROOT_BASE = (pt(0, 0), pt(4, 0))


def _stripped_outer_ids(h: OnePlaneGraph, base_edge: Optional[int]) -> List[int]:
    """Corner ids of the stripped piece's outer walk; when a base copy is
    given the list is rotated so the walk starts by traversing it."""
    fw = h.faces[h.outer_face]
    darts = list(fw.darts)
    if base_edge is None:
        start = 0
    else:
        start = next(i for i, d in enumerate(darts) if d[0] == base_edge)
    seq = [h.dart_tail(darts[start])[1]]
    for i in range(len(darts) - 1):
        seq.append(h.dart_head(darts[(start + i) % len(darts)])[1])
    return seq


class _Recorder:
    def __init__(self):
        self.assembly = _Assembly()
        self.redirects: Dict[int, int] = {}
        self.provenance: Dict[Tuple[str, int], int] = {}
        self.piece_count = 0
        self.max_depth = 0


def _draw_piece(piece: Piece, rec: _Recorder, base: Optional[Tuple[int, Point, Point]],
                depth: int) -> None:
    """Draw one piece (and recursively its bundles) into the assembly.

    `base` is (copy edge id, pu, pv) for child pieces, None for the root.
    """
    rec.max_depth = max(rec.max_depth, depth)
    idx = rec.piece_count
    rec.piece_count += 1

    g = piece.graph
    h, removed = strip_crossing_pairs(g)
    base_edge = base[0] if base else None
    walk = _stripped_outer_ids(h, base_edge)

    if base is None:
        p0, p1 = ROOT_BASE
        if len(walk) == 3:
            spec = triangle_on(walk, p0, p1, Q(3, 4))
        else:
            spec = trapezoid_on(walk, p0, p1, Q(1, 2), Q(1, 4))
    else:
        spec = fit_replacement_polygon(walk, base[1], base[2], rec.assembly)

    drawing = convex_draw(h, spec)
    drawing = perturb_general_position(drawing)

    for v in sorted(h.vertices):
        rec.assembly.add_vertex(v, drawing.positions[v])
        rec.provenance.setdefault(("vertex", v), idx)

    pair_edges = {e for rp in removed for e in rp.edges}
    for eid in sorted(g.edges):
        er = g.edges[eid]
        if er.kind == THICK or eid in pair_edges or eid == base_edge:
            continue
        rec.assembly.add_polyline(
            eid, (drawing.positions[er.u], drawing.positions[er.v]))
        rec.provenance.setdefault(("edge", eid), idx)

    for rp in removed:
        pair = [(e, (g.edges[e].u, g.edges[e].v)) for e in rp.edges]
        if rp.is_outer:
            pl1, pl2 = reinsert_outer_pair(spec, pair)
        else:
            fi = h.face_of_dart[rp.host_dart]
            quad = [(c[1], drawing.positions[c[1]]) for c in h.faces[fi].corners]
            pl1, pl2 = reinsert_inner_pair(quad, pair)
        for pl in (pl1, pl2):
            rec.assembly.add_polyline(pl.edge, pl.points)
            rec.provenance.setdefault(("edge", pl.edge), idx)

    # every bundle's representative segment must be in place before any
    # child polygon is fitted, or a sliver could cross a later thick edge
    for tid in sorted(piece.bundles):
        bundle = piece.bundles[tid]
        survivor = min(bundle.copies)
        srec = bundle.dropped if survivor == bundle.copies[-1] else None
        if srec is None:
            for comp in bundle.components:
                if survivor in comp.graph.edges:
                    srec = comp.graph.edges[survivor]
                    break
        assert srec is not None
        rec.assembly.add_polyline(
            survivor, (drawing.positions[srec.u], drawing.positions[srec.v]))
        rec.provenance.setdefault(("edge", survivor), idx)
        for c in bundle.copies:
            if c != survivor:
                rec.redirects[c] = survivor

    for tid in sorted(piece.bundles):
        bundle = piece.bundles[tid]
        for i in range(len(bundle.components) - 1, -1, -1):
            comp = bundle.components[i]
            copy_eid = bundle.copies[i]
            ch = comp.graph
            chh, _ = strip_crossing_pairs(ch)
            cwalk = _stripped_outer_ids(chh, copy_eid)
            pu = rec.assembly.pos[cwalk[0]]
            pv = rec.assembly.pos[cwalk[1]]
            _draw_piece(comp, rec, (copy_eid, pu, pv), depth + 1)


def draw_recursive(tree: DecompTree) -> Drawing:
    """1-bend RAC drawing of the triangulated multigraph behind the tree
    (one representative per parallel family)."""
    rec = _Recorder()
    _draw_piece(tree.root, rec, None, 0)
    drawing = Drawing(dict(rec.assembly.pos),
                      {e: Polyline(e, pts) for e, pts in rec.assembly.lines.items()},
                      rec.provenance)
    drawing.redirects = dict(rec.redirects)
    drawing.tree_depth = rec.max_depth
    return drawing


def strip_augmentation(drawing: Drawing, res: AugmentResult,
                       original: OnePlaneGraph) -> Drawing:
    """Keep only the original graph: drop extra vertices and added edges,
    restore pruned originals along their surviving parallel's geometry."""
    redirects = dict(res.redirects)
    redirects.update(getattr(drawing, "redirects", {}))

    positions = {v: drawing.positions[v] for v in original.vertices}
    polylines = {}
    for eid in sorted(original.edges):
        target = eid
        seen = set()
        while target not in drawing.polylines:
            if target in seen or target not in redirects:
                raise MissingGeometry("no surviving geometry for edge %d" % eid)
            seen.add(target)
            target = redirects[target]
        pts = drawing.polylines[target].points
        er = original.edges[eid]
        if pts[0] != positions[er.u]:
            pts = tuple(reversed(pts))
        assert pts[0] == positions[er.u] and pts[-1] == positions[er.v]
        polylines[eid] = Polyline(eid, pts)
    prov = {("vertex", v): drawing.provenance.get(("vertex", v), 0)
            for v in positions}
    for e in polylines:
        prov[("edge", e)] = drawing.provenance.get(("edge", e), 0)
    out = Drawing(positions, polylines, prov)
    out.tree_depth = getattr(drawing, "tree_depth", 0)
    return out


# ---- whole-graph pipeline -----------------------------------------------------


def _min_feature_log2(drawing: Drawing) -> Optional[float]:
    """Approximate log2 of the smallest distance between drawn segments
    that do not share an endpoint.  Endpoint-based distances are exact for
    disjoint segments and conveniently skip legitimate crossings; scaled
    floats keep the estimate finite at any coordinate magnitude."""
    import math

    from .geometry import scaled_float_fn

    segs = []
    coords = []
    for pl in drawing.polylines.values():
        for a, b in pl.segments():
            segs.append((a, b))
            coords.extend((a.x, a.y, b.x, b.y))
    if len(segs) < 2:
        return None
    conv, e = scaled_float_fn(coords)
    fsegs = [(conv(a.x), conv(a.y), conv(b.x), conv(b.y)) for a, b in segs]
    n = len(segs)
    import numpy as np
    arr = np.array(fsegs)
    boxes = np.column_stack([np.minimum(arr[:, 0], arr[:, 2]),
                             np.minimum(arr[:, 1], arr[:, 3]),
                             np.maximum(arr[:, 0], arr[:, 2]),
                             np.maximum(arr[:, 1], arr[:, 3])])
    fbest = math.inf
    for i in range(n):
        gx = np.maximum(np.maximum(boxes[i, 0] - boxes[i + 1:, 2],
                                   boxes[i + 1:, 0] - boxes[i, 2]), 0.0)
        gy = np.maximum(np.maximum(boxes[i, 1] - boxes[i + 1:, 3],
                                   boxes[i + 1:, 1] - boxes[i, 3]), 0.0)
        gap = np.hypot(gx, gy)
        for off in np.nonzero(gap <= fbest)[0]:
            j = i + 1 + off
            a, b = segs[i]
            c, d = segs[j]
            if {a, b} & {c, d}:
                continue
            fd = _fseg_seg(fsegs[i], fsegs[j])
            if 0.0 < fd < fbest:
                fbest = fd
    if not math.isfinite(fbest) or fbest <= 0.0:
        return None
    return math.log2(fbest) + e


def normalize_scale(drawing: Drawing) -> Drawing:
    """Uniformly scale (by a power of two) so the smallest pairwise feature
    distance is at least one unit; capped so float renditions stay finite."""
    import math

    from .geometry import magnitude_exp

    l2 = _min_feature_log2(drawing)
    if l2 is None or l2 >= 0:
        return drawing
    k = int(math.floor(-l2)) + 1
    span = max((magnitude_exp(c) for p in drawing.all_points() for c in p),
               default=0)
    k = min(k, max(0, 900 - span))
    if k <= 0:
        return drawing
    s = Q(2) ** k

    def sc(p):
        return Point(p.x * s, p.y * s)

    return _map_drawing(drawing, sc)


def _map_drawing(drawing: Drawing, f) -> Drawing:
    out = Drawing({v: f(p) for v, p in drawing.positions.items()},
                  {e: Polyline(e, tuple(f(p) for p in pl.points))
                   for e, pl in drawing.polylines.items()},
                  dict(drawing.provenance))
    out.tree_depth = getattr(drawing, "tree_depth", 0)
    return out


@dataclass
class PipelineResult:
    drawing: Drawing
    components: int
    tree_depth: int
    piece_count: int


def draw_graph(g: OnePlaneGraph, validate: bool = False) -> PipelineResult:
    """Full pipeline: augmentation, decomposition, recursive RAC drawing
    and stripping, independently per connected component."""
    parts = []
    depth = 0
    pieces = 0
    for comp in split_components(g):
        res = augment(comp)
        tree = contract_to_gstar(res.triangulated, validate=validate)
        dplus = draw_recursive(tree)
        if dplus.provenance:
            pieces += max(dplus.provenance.values()) + 1
        final = strip_augmentation(dplus, res, comp)
        final = normalize_scale(final)
        depth = max(depth, final.tree_depth)
        parts.append(final)

    if len(parts) == 1:
        merged = parts[0]
    else:
        merged = Drawing({}, {}, {})
        offset = Q(0)
        for part in parts:
            box = bbox(list(part.all_points()))
            dx = offset - box[0]
            dy = -box[1]
            moved = _map_drawing(part, lambda p, dx=dx, dy=dy: Point(p.x + dx, p.y + dy))
            merged.positions.update(moved.positions)
            merged.polylines.update(moved.polylines)
            merged.provenance.update(moved.provenance)
            offset = offset + (box[2] - box[0]) + 1
        merged.tree_depth = depth
    return PipelineResult(merged, len(parts), depth, pieces)
