"""Planar straight-line drawings with strictly convex faces and a
prescribed outer polygon.

The drawing engine is barycentric: boundary vertices are pinned to the
polygon corners and every interior vertex is placed at the average of its
neighbours, solved exactly over the rationals with a sparse min-degree
elimination.  For a 3-connected plane graph this yields a planar drawing
with convex faces; a perturbation pass then removes collinear face
corners without losing convexity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import AssertionFailure, DegreeMismatch, GeometryViolation
from .geometry import (Point, Q, QZERO, add, cross, orient, pt, rot90, scale,
                       sub)
from .model import Dart, OnePlaneGraph, rev
from .decompose import assert_three_connected

TRIANGLE = "triangle"
TRAPEZOID = "trapezoid"


@dataclass(frozen=True)
class PolygonSpec:
    """Prescribed outer polygon with corner-to-vertex assignment.

    `corners` follows the cyclic order of the piece's outer walk.  For
    trapezoids the similarity frame maps local (s, t) coordinates to the
    plane: the greater base spans s in [0, 1] at t = 0, the minor base
    spans [s0, s0 + w] at t = h, and both axes have the base's length so
    right angles built in frame coordinates are exact in the plane.
    """
    shape: str
    corners: Tuple[Tuple[int, Point], ...]
    origin: Point
    u_axis: Point
    n_axis: Point
    s0: object = None
    w: object = None
    h: object = None

    def at(self, s, t) -> Point:
        return add(self.origin, add(scale(self.u_axis, s), scale(self.n_axis, t)))

    @property
    def points(self) -> List[Point]:
        return [p for _v, p in self.corners]

    def __post_init__(self):
        pts = self.points
        if len(pts) != (3 if self.shape == TRIANGLE else 4):
            raise GeometryViolation("polygon corner count does not match shape")
        sign = None
        n = len(pts)
        for i in range(n):
            o = orient(pts[i], pts[(i + 1) % n], pts[(i + 2) % n])
            if o == QZERO:
                raise GeometryViolation("degenerate prescribed polygon")
            s = o > QZERO
            if sign is None:
                sign = s
            elif s != sign:
                raise GeometryViolation("prescribed polygon is not convex")
        if self.shape == TRAPEZOID:
            if not (QZERO < self.s0 and self.s0 + self.w < 1 and self.h > QZERO):
                raise GeometryViolation("minor base must sit strictly inside "
                                        "the greater base at positive height")


def triangle_on(walk: Sequence[int], p0: Point, p1: Point, height) -> PolygonSpec:
    """Triangle with base p0->p1 and apex at the given height (frame units)
    on the clockwise side of the base; corners follow `walk` order."""
    u = sub(p1, p0)
    n = scale(rot90(u), Q(-1))
    spec = PolygonSpec(TRIANGLE,
                       ((walk[0], p0), (walk[1], p1),
                        (walk[2], add(p0, add(scale(u, Q(1, 2)), scale(n, height))))),
                       p0, u, n)
    return spec


def trapezoid_on(walk: Sequence[int], p0: Point, p1: Point, height, width) -> PolygonSpec:
    """Trapezoid with greater base p0->p1; the minor base is centred at the
    given height (frame units) on the clockwise side; corners follow `walk`
    order: base first and second corner, then above the second, then above
    the first."""
    u = sub(p1, p0)
    n = scale(rot90(u), Q(-1))
    s0 = (1 - Q(width)) / 2
    h = Q(height)
    w = Q(width)

    def at(s, t):
        return add(p0, add(scale(u, s), scale(n, t)))

    return PolygonSpec(TRAPEZOID,
                       ((walk[0], p0), (walk[1], p1),
                        (walk[2], at(s0 + w, h)), (walk[3], at(s0, h))),
                       p0, u, n, s0=s0, w=w, h=h)


@dataclass
class StraightDrawing:
    positions: Dict[int, Point]
    host: OnePlaneGraph
    boundary: Tuple[int, ...]

    def face_points(self, face_idx: int) -> List[Point]:
        return [self.positions[c[1]] for c in self.host.faces[face_idx].corners]


# ---- crossing-pair removal --------------------------------------------------


@dataclass(frozen=True)
class RemovedPair:
    crossing: int
    edges: Tuple[int, int]
    corners: Tuple[int, int, int, int]   # circular order around the crossing
    host_dart: Dart                      # a dart of H on the vacated face
    is_outer: bool


def strip_crossing_pairs(piece: OnePlaneGraph) -> Tuple[OnePlaneGraph, List[RemovedPair]]:
    """Remove every crossing pair; faces become degree 3 or 4 and the
    result stays 3-connected."""
    if not piece.crossings:
        return piece, []

    removed_edges = {e for pair in piece.crossings.values() for e in pair}
    rot = {n: list(ds) for n, ds in piece.rot.items()}
    edges = dict(piece.edges)

    pair_info = []
    for cid in sorted(piece.crossings):
        e1, e2 = piece.crossings[cid]
        corners = piece.crossing_cycle(cid)
        # a surviving dart flanking the crossing: third side of any wedge
        host_dart = None
        for d in piece.rot[("x", cid)]:
            fw = piece.faces[piece.face_of_dart[rev(d)]]
            side = [x for x in fw.darts if x[0] not in (e1, e2)]
            if side:
                host_dart = side[0]
                break
        assert host_dart is not None, "crossing without a flank side"
        pair_info.append((cid, (e1, e2), corners, host_dart))
        for e in (e1, e2):
            er = edges.pop(e)
            rot[("v", er.u)].remove((e, 0, True))
            rot[("v", er.v)].remove((e, 1, True))
        del rot[("x", cid)]

    anchor = piece.outer_anchor
    if anchor is None:
        anchor = piece.faces[piece.outer_face].darts[0]
    if anchor[0] in removed_edges:
        merged = {piece.outer_face}
        frontier = [piece.outer_face]
        while frontier:
            nxt = []
            for fi in frontier:
                for d in piece.faces[fi].darts:
                    if d[0] in removed_edges:
                        other = piece.face_of_dart[rev(d)]
                        if other not in merged:
                            merged.add(other)
                            nxt.append(other)
            frontier = nxt
        anchor = None
        for fi in sorted(merged):
            for d in piece.faces[fi].darts:
                if d[0] not in removed_edges:
                    anchor = d
                    break
            if anchor:
                break
        assert anchor is not None

    h = OnePlaneGraph(piece.vertices, edges, {}, rot,
                      outer_anchor=anchor, stage="stripped")

    for fw in h.faces:
        if fw.degree not in (3, 4):
            raise AssertionFailure("stripped piece has a face of degree %d"
                                   % fw.degree)
    if not assert_three_connected(h):
        raise AssertionFailure("stripped piece is not 3-connected")

    out = [RemovedPair(cid, pair, corners, hd,
                       h.face_of_dart[hd] == h.outer_face)
           for cid, pair, corners, hd in pair_info]
    return h, out


# ---- exact barycentric placement --------------------------------------------


def _solve_barycentric(h: OnePlaneGraph, pinned: Dict[int, Point]) -> Dict[int, Point]:
    interior = sorted(v for v in h.vertices if v not in pinned)
    if not interior:
        return dict(pinned)
    idx = {v: i for i, v in enumerate(interior)}
    adj = h.adjacency()

    rows: List[Dict[int, object]] = []
    rhs: List[List[object]] = []
    for v in interior:
        row = {idx[v]: Q(len(adj[v]))}
        bx = by = QZERO
        for u in adj[v]:
            if u in pinned:
                bx += pinned[u].x
                by += pinned[u].y
            else:
                row[idx[u]] = row.get(idx[u], QZERO) - 1
        rows.append(row)
        rhs.append([bx, by])

    n = len(rows)
    alive = set(range(n))
    col_rows: List[set] = [set() for _ in range(n)]
    for i, row in enumerate(rows):
        for j in row:
            col_rows[j].add(i)

    elim_order: List[int] = []
    for _ in range(n):
        p = min(alive, key=lambda j: (len(col_rows[j]), j))
        alive.discard(p)
        elim_order.append(p)
        prow = rows[p]
        piv = prow[p]
        for r in list(col_rows[p]):
            if r == p:
                continue
            row = rows[r]
            factor = row[p] / piv
            for j, a in prow.items():
                if j == p:
                    continue
                nv = row.get(j, QZERO) - factor * a
                if nv == QZERO:
                    if j in row:
                        del row[j]
                        col_rows[j].discard(r)
                else:
                    if j not in row:
                        col_rows[j].add(r)
                    row[j] = nv
            del row[p]
            col_rows[p].discard(r)
            rhs[r][0] -= factor * rhs[p][0]
            rhs[r][1] -= factor * rhs[p][1]
        # pivot row p stays; drop its column links to eliminated rows only
        for j in list(prow):
            if j != p:
                col_rows[j].discard(p)

    sol: List[Optional[Tuple]] = [None] * n
    for p in reversed(elim_order):
        row = rows[p]
        sx, sy = rhs[p]
        for j, a in row.items():
            if j == p:
                continue
            sx -= a * sol[j][0]
            sy -= a * sol[j][1]
        piv = row[p]
        sol[p] = (sx / piv, sy / piv)

    out = dict(pinned)
    for v, i in idx.items():
        out[v] = Point(sol[i][0], sol[i][1])
    return out


def convex_draw(h: OnePlaneGraph, spec: PolygonSpec) -> StraightDrawing:
    """Straight-line drawing of a 3-connected plane graph with the outer
    face realized as the prescribed polygon."""
    outer = h.faces[h.outer_face]
    walk_ids = [c[1] for c in outer.corners]
    if len(walk_ids) != len(spec.corners):
        raise DegreeMismatch("outer face degree %d vs %d polygon corners"
                             % (len(walk_ids), len(spec.corners)))
    assigned = {v: p for v, p in spec.corners}
    if set(walk_ids) != set(assigned):
        raise DegreeMismatch("outer walk %r does not match polygon corners %r"
                             % (walk_ids, sorted(assigned)))
    spec_order = [v for v, _p in spec.corners]
    k = len(walk_ids)
    if not any(walk_ids[i:] + walk_ids[:i] == spec_order for i in range(k)):
        raise DegreeMismatch("corner assignment does not follow the outer walk")

    positions = _solve_barycentric(h, assigned)
    for v, p in assigned.items():
        assert positions[v] == p
    return StraightDrawing(positions, h, tuple(walk_ids))


# ---- general position --------------------------------------------------------


def _face_sign(points: List[Point]) -> int:
    s = QZERO
    n = len(points)
    for i in range(n):
        s += cross(points[i], points[(i + 1) % n])
    return 1 if s > QZERO else (-1 if s < QZERO else 0)


def _strictness_violation(d: StraightDrawing):
    """First (face, corner-triple) with a collinear or wrongly oriented
    corner among inner faces; None when the drawing is in general position."""
    h = d.host
    for fi, fw in enumerate(h.faces):
        if fi == h.outer_face:
            continue
        pts = d.face_points(fi)
        sign = _face_sign(pts)
        m = len(pts)
        for i in range(m):
            o = orient(pts[i], pts[(i + 1) % m], pts[(i + 2) % m])
            if o == QZERO or (o > QZERO) != (sign > 0):
                return fi, i
    return None


def _all_faces_strict(d: StraightDrawing, signs: Dict[int, int]) -> bool:
    h = d.host
    for fi, fw in enumerate(h.faces):
        if fi == h.outer_face:
            continue
        pts = d.face_points(fi)
        m = len(pts)
        for i in range(m):
            o = orient(pts[i], pts[(i + 1) % m], pts[(i + 2) % m])
            if o == QZERO or (o > QZERO) != (signs[fi] > 0):
                return False
    return True


def perturb_general_position(d: StraightDrawing) -> StraightDrawing:
    """Nudge interior vertices until no face has three collinear corners;
    convexity, planarity and the prescribed corners are preserved."""
    h = d.host
    boundary = set(d.boundary)
    signs = {}
    for fi, fw in enumerate(h.faces):
        if fi == h.outer_face:
            continue
        s = _face_sign(d.face_points(fi))
        if s == 0:
            # a fully collinear (degenerate) face: orient by the outer sign
            s = -_face_sign([d.positions[v] for v in d.boundary])
        signs[fi] = s

    for _round in range(200):
        hit = _strictness_violation(d)
        if hit is None:
            return d
        fi, i = hit
        fw = h.faces[fi]
        m = fw.degree
        ids = [c[1] for c in fw.corners]
        trip = [ids[i], ids[(i + 1) % m], ids[(i + 2) % m]]
        movable = [v for v in (trip[1], trip[0], trip[2]) if v not in boundary]
        if not movable:
            raise GeometryViolation("collinear triple of pinned corners")
        v = movable[0]
        a = d.positions[trip[0]]
        c = d.positions[trip[2]]
        if v == trip[0]:
            a, c = d.positions[trip[1]], d.positions[trip[2]]
        elif v == trip[2]:
            a, c = d.positions[trip[0]], d.positions[trip[1]]
        normal = rot90(sub(c, a))
        eps = Q(1, 1024)
        old = d.positions[v]
        for _ in range(80):
            done = False
            for direction in (normal, scale(normal, Q(-1))):
                d.positions[v] = add(old, scale(direction, eps))
                if _all_faces_strict(d, signs):
                    done = True
                    break
            if done:
                break
            eps = eps / 2
        else:
            d.positions[v] = old
            raise GeometryViolation("could not restore general position")
    raise GeometryViolation("perturbation did not converge")
