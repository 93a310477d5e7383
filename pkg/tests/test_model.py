import pytest

from onebend.errors import (AdjacentCrossing, BadRotation, DensityExceeded,
                            EdgeCrossedTwice, NotTriangulated, ValidationError)
from onebend.model import (build_one_plane_graph, empty_kite_check,
                           is_triangulated, kite_of, kite_violations,
                           split_components, trace_faces)

from conftest import doc


def test_k4_faces():
    g = build_one_plane_graph(doc("k4"))
    faces = trace_faces(g)
    assert len(faces) == 4
    assert all(f.degree == 3 for f in faces)
    assert is_triangulated(g)
    # outer face is the one traversing the outer triangle
    assert set(g.faces[g.outer_face].vertex_corners) == {0, 1, 2}


def test_lone_pair_planarization():
    g = build_one_plane_graph(doc("lone_pair"))
    assert len(g.faces) == 1
    assert g.faces[0].degree == 8
    assert g.crossing_cycle(0) == (2, 3, 0, 1)


def test_c5_faces():
    g = build_one_plane_graph(doc("c5"))
    assert len(g.faces) == 2
    assert sorted(f.degree for f in g.faces) == [5, 5]
    assert not is_triangulated(g)


def test_kite_embedding():
    g = build_one_plane_graph(doc("kite"))
    assert len(g.faces) == 5
    degs = sorted(f.degree for f in g.faces)
    assert degs == [3, 3, 3, 3, 4]
    assert g.faces[g.outer_face].degree == 4
    assert not is_triangulated(g)
    k = kite_of(g, 0)
    assert k is not None
    assert sorted(k.boundary) == [0, 1, 2, 3]


def test_fig5_triangulated_with_outer_crossing():
    g = build_one_plane_graph(doc("fig5"))
    assert is_triangulated(g)
    # designated outer face carries crossing 1
    assert g.faces[g.outer_face].crossing_corners == (1,)
    # pair 0 forms an empty kite, pair 1 is the allowed exception
    assert kite_of(g, 0) is not None
    assert kite_of(g, 1) is None
    assert empty_kite_check(g) == []
    # without the exception the outer pair is reported
    assert kite_violations(g, allow_outer_exception=False) == [
        (1, "crossing on outer face")]


def test_empty_kite_check_requires_triangulated():
    g = build_one_plane_graph(doc("kite"))
    with pytest.raises(NotTriangulated):
        empty_kite_check(g)


def test_edge_crossed_twice():
    d = doc("k5")
    d["crossings"].append([4, 7])
    with pytest.raises(EdgeCrossedTwice):
        build_one_plane_graph(d)


def test_adjacent_crossing_rejected():
    d = doc("kite")
    # pair (0,1) shares vertex 1
    d["crossings"] = [[0, 1]]
    d["rotation"]["x0"] = [[0, 0], [1, 1], [0, 1], [1, 2]]
    with pytest.raises(AdjacentCrossing):
        build_one_plane_graph(d)


def test_bad_rotation_alternation():
    d = doc("lone_pair")
    d["rotation"]["x0"] = [[0, 2], [0, 0], [1, 3], [1, 1]]
    with pytest.raises(BadRotation):
        build_one_plane_graph(d)


def test_bad_rotation_euler():
    d = doc("k4")
    # swapping two entries at one vertex puts the embedding on the torus
    d["rotation"]["v3"] = [3, 5, 4]
    with pytest.raises(BadRotation):
        build_one_plane_graph(d)


def test_density_bound():
    n = 12
    edges = [[u, v] for u in range(n) for v in range(u + 1, n)][:41]
    with pytest.raises(DensityExceeded):
        build_one_plane_graph({"n": n, "edges": edges, "crossings": [],
                               "rotation": {}})


def test_self_loop_rejected():
    d = doc("k4")
    d["edges"][0] = [1, 1]
    with pytest.raises(ValidationError):
        build_one_plane_graph(d)


def test_duplicate_edge_rejected():
    d = doc("k4")
    d["edges"].append([0, 1])
    d["rotation"]["v0"] = [0, 6, 3, 2]
    d["rotation"]["v1"] = [1, 4, 0, 6]
    with pytest.raises(ValidationError):
        build_one_plane_graph(d)


def test_trace_deterministic():
    g1 = build_one_plane_graph(doc("fig5"))
    g2 = build_one_plane_graph(doc("fig5"))
    assert [f.darts for f in g1.faces] == [f.darts for f in g2.faces]


def test_split_components():
    # two disjoint triangles
    d = {
        "n": 6,
        "edges": [[0, 1], [1, 2], [2, 0], [3, 4], [4, 5], [5, 3]],
        "crossings": [],
        "rotation": {
            "v0": [0, 2], "v1": [1, 0], "v2": [2, 1],
            "v3": [3, 5], "v4": [4, 3], "v5": [5, 4],
        },
        "outer_face": {"edge": 0, "from": 1},
    }
    g = build_one_plane_graph(d)
    comps = split_components(g)
    assert len(comps) == 2
    sizes = sorted(len(c.vertices) for c in comps)
    assert sizes == [3, 3]
    anchored = [c for c in comps if c.outer_anchor is not None]
    assert len(anchored) == 1


def test_bowtie_outer_walk_repeats_cut_vertex():
    g = build_one_plane_graph(doc("bowtie"))
    outer = g.faces[g.outer_face]
    assert outer.degree == 6
    assert outer.vertex_corners.count(2) == 2
