import pytest

from onebend.augment import augment
from onebend.convexdraw import (PolygonSpec, RemovedPair, StraightDrawing,
                                convex_draw, perturb_general_position,
                                strip_crossing_pairs, triangle_on,
                                trapezoid_on)
from onebend.decompose import assert_three_connected, contract_to_gstar
from onebend.errors import DegreeMismatch, GeometryViolation
from onebend.geometry import Q, QZERO, Point, orient, pt
from onebend.model import build_one_plane_graph

from conftest import doc


def outer_walk_ids(g):
    return [c[1] for c in g.faces[g.outer_face].corners]


def test_strip_no_crossings_identity():
    g = build_one_plane_graph(doc("k4"))
    h, removed = strip_crossing_pairs(g)
    assert h is g
    assert removed == []


def test_strip_k5_piece():
    gp = augment(build_one_plane_graph(doc("k5"))).triangulated
    tree = contract_to_gstar(gp)
    piece = tree.root.graph
    h, removed = strip_crossing_pairs(piece)
    assert len(removed) == 1
    assert len(h.edges) == len(piece.edges) - 2
    degs = sorted(f.degree for f in h.faces)
    assert set(degs) <= {3, 4}
    assert degs.count(4) == 1
    assert assert_three_connected(h)
    rp = removed[0]
    assert set(rp.corners) == {0, 1, 2, 3}
    assert not rp.is_outer
    assert h.face_of_dart[rp.host_dart] != h.outer_face


def test_strip_outer_pair_recorded():
    # the double-crossing instance leaves a crossing on the outer face of
    # the triangulated graph, so stripping yields a quadrilateral outer face
    gp = augment(build_one_plane_graph(doc("outer_pair"))).triangulated
    assert gp.faces[gp.outer_face].crossing_corners != ()
    tree = contract_to_gstar(gp)
    piece = tree.root.graph
    h, removed = strip_crossing_pairs(piece)
    outer_pairs = [r for r in removed if r.is_outer]
    assert len(outer_pairs) == 1
    assert h.faces[h.outer_face].degree == 4


def test_fig5_outer_crossing_hidden_by_augmentation():
    # a crossing on the *input* outer face gets wrapped by its kite copy
    # during augmentation; the triangulated graph has no outer exception
    gp = augment(build_one_plane_graph(doc("fig5"))).triangulated
    from onebend.model import kite_violations
    assert kite_violations(gp, allow_outer_exception=False) == []


def test_convex_draw_triangle_exact_corners():
    g = build_one_plane_graph(doc("k4"))
    # restrict to the outer triangle only
    tri = {
        "n": 3,
        "edges": [[0, 1], [1, 2], [2, 0]],
        "crossings": [],
        "rotation": {"v0": [0, 2], "v1": [1, 0], "v2": [2, 1]},
        "outer_face": {"edge": 0, "from": 1},
    }
    t = build_one_plane_graph(tri)
    walk = outer_walk_ids(t)
    spec = triangle_on(walk, pt(0, 0), pt(4, 0), Q(3, 4))
    d = convex_draw(t, spec)
    for v, p in spec.corners:
        assert d.positions[v] == p


def test_convex_draw_k4_interior_strictly_inside():
    g = build_one_plane_graph(doc("k4"))
    walk = outer_walk_ids(g)
    spec = triangle_on(walk, pt(0, 0), pt(4, 0), Q(3, 4))
    d = convex_draw(g, spec)
    d = perturb_general_position(d)
    hull = [p for _v, p in spec.corners]
    inner = d.positions[3]
    sign = None
    for i in range(3):
        o = orient(hull[i], hull[(i + 1) % 3], inner)
        assert o != QZERO
        s = o > QZERO
        sign = s if sign is None else sign
        assert s == sign
    # every face strictly convex
    for fi, fw in enumerate(g.faces):
        if fi == g.outer_face:
            continue
        pts = d.face_points(fi)
        for i in range(len(pts)):
            assert orient(pts[i], pts[(i + 1) % len(pts)],
                          pts[(i + 2) % len(pts)]) != QZERO


def test_convex_draw_wheel_quad_trapezoid():
    # wheel with quadrilateral outer face: hub 4 joined to cycle 0..3
    d = {
        "n": 5,
        "edges": [[0, 1], [1, 2], [2, 3], [3, 0], [4, 0], [4, 1], [4, 2], [4, 3]],
        "crossings": [],
        "rotation": {
            "v0": [0, 4, 3],
            "v1": [1, 5, 0],
            "v2": [2, 6, 1],
            "v3": [3, 7, 2],
            "v4": [4, 5, 6, 7],
        },
        "outer_face": {"edge": 0, "from": 1},
    }
    g = build_one_plane_graph(d)
    walk = outer_walk_ids(g)
    assert len(walk) == 4
    spec = trapezoid_on(walk, pt(0, 0), pt(4, 0), Q(1, 2), Q(1, 4))
    dr = convex_draw(g, spec)
    dr = perturb_general_position(dr)
    for v, p in spec.corners:
        assert dr.positions[v] == p
    for fi, fw in enumerate(g.faces):
        if fi == g.outer_face:
            continue
        pts = dr.face_points(fi)
        m = len(pts)
        sign = None
        for i in range(m):
            o = orient(pts[i], pts[(i + 1) % m], pts[(i + 2) % m])
            assert o != QZERO
            s = o > QZERO
            sign = s if sign is None else sign
            assert s == sign


def test_degree_mismatch():
    g = build_one_plane_graph(doc("k4"))
    walk = outer_walk_ids(g)
    spec = trapezoid_on(walk + [3], pt(0, 0), pt(4, 0), Q(1, 2), Q(1, 4))
    with pytest.raises(DegreeMismatch):
        convex_draw(g, spec)


def test_perturb_fixes_collinear_quad():
    # square 0..3 with a hub joined to 0,1,2 only; the face (2,3,0,4) is a
    # quadrilateral.  Hub at the centre is collinear with corners 0 and 2
    # while all faces stay convex: the documented perturbation precondition.
    d = {
        "n": 5,
        "edges": [[0, 1], [1, 2], [2, 3], [3, 0], [4, 0], [4, 1], [4, 2]],
        "crossings": [],
        "rotation": {
            "v0": [0, 4, 3],
            "v1": [1, 5, 0],
            "v2": [2, 6, 1],
            "v3": [3, 2],
            "v4": [4, 5, 6],
        },
        "outer_face": {"edge": 0, "from": 1},
    }
    g = build_one_plane_graph(d)
    positions = {0: pt(0, 0), 1: pt(4, 0), 2: pt(4, 4), 3: pt(0, 4),
                 4: pt(2, 2)}
    orig = dict(positions)
    dr = StraightDrawing(positions, g, tuple(outer_walk_ids(g)))
    quad = [fi for fi, fw in enumerate(g.faces)
            if fi != g.outer_face and fw.degree == 4][0]
    pts = dr.face_points(quad)
    assert any(orient(pts[i], pts[(i + 1) % 4], pts[(i + 2) % 4]) == QZERO
               for i in range(4))
    fixed = perturb_general_position(dr)
    for fi in range(len(g.faces)):
        if fi == g.outer_face:
            continue
        pts = fixed.face_points(fi)
        m = len(pts)
        for i in range(m):
            assert orient(pts[i], pts[(i + 1) % m], pts[(i + 2) % m]) != QZERO
    # boundary corners unmoved
    for v in (0, 1, 2, 3):
        assert fixed.positions[v] == orig[v]


def test_perturb_noop_when_general():
    g = build_one_plane_graph(doc("k4"))
    walk = outer_walk_ids(g)
    spec = triangle_on(walk, pt(0, 0), pt(4, 0), Q(3, 4))
    dr = convex_draw(g, spec)
    before = dict(dr.positions)
    after = perturb_general_position(dr)
    if before == after.positions:
        assert after.positions == before  # already general: unchanged
