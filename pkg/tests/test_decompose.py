import pytest

from onebend.augment import augment
from onebend.decompose import (assert_three_connected, contract_to_gstar,
                               find_parallel_bundles)
from onebend.model import (THICK, build_one_plane_graph, is_triangulated)

from conftest import doc


def gplus_of(name):
    return augment(build_one_plane_graph(doc(name))).triangulated


def test_simple_3connected_piece_no_bundles():
    gp = gplus_of("k4")
    assert find_parallel_bundles(gp) == []
    tree = contract_to_gstar(gp, validate=True)
    assert tree.root.bundles == {}
    assert tree.root.graph.canonical_key()[0:3] == gp.canonical_key()[0:3]


def test_separation_pair_bundle_k2():
    gp = gplus_of("bowtie")
    bundles = find_parallel_bundles(gp)
    assert bundles, "bowtie fan must create a separation pair bundle"
    for b in bundles:
        assert len(b.edges) >= 2
        assert len(b.inner_components) == len(b.edges) - 1
        u, v = b.poles
        # Lemma 2: removing the interior of the outermost cycle kills the pair
        inner_vertices = set()
        for verts, _edges in b.inner_components:
            inner_vertices |= set(verts)
        inner_vertices -= {u, v}
        adj = gp.adjacency()
        remaining = set(adj) - inner_vertices - {u, v}
        if remaining:
            seen = set()
            start = min(remaining)
            stack = [start]
            while stack:
                x = stack.pop()
                if x in seen:
                    continue
                seen.add(x)
                stack.extend(adj[x] & remaining - seen)
            assert seen == remaining, "pair still separates after removal"


def test_contract_produces_simple_3connected_pieces():
    for name in ("k4", "kite", "lone_pair", "c5", "fig5", "k5", "bowtie"):
        gp = gplus_of(name)
        tree = contract_to_gstar(gp, validate=True)
        for piece in tree.pieces():
            g = piece.graph
            assert g.is_simple
            assert is_triangulated(g)
            assert assert_three_connected(g)
            thick = [e for e in g.edges.values() if e.kind == THICK]
            assert len(thick) == len(piece.bundles)
            for e in thick:
                assert not g.is_crossed(e.id)


def test_expand_reproduces_gplus():
    for name in ("k4", "kite", "lone_pair", "c5", "fig5", "k5", "bowtie"):
        gp = gplus_of(name)
        tree = contract_to_gstar(gp)
        back = tree.expand()
        assert back.canonical_key() == gp.canonical_key(), name


def test_bundle_order_outermost_first():
    gp = gplus_of("bowtie")
    for b in find_parallel_bundles(gp):
        # the two flank faces of the first and last copy: one flank of e_1
        # must lie outside every inner component
        inner_edges = set()
        for _v, es in b.inner_components:
            inner_edges |= set(es)
        assert set(b.edges) <= inner_edges


def test_assert_three_connected_k4():
    g = build_one_plane_graph(doc("k4"))
    assert assert_three_connected(g)


def test_assert_three_connected_separation_pair():
    d = {
        "n": 4,
        "edges": [[0, 1], [1, 2], [2, 0], [1, 3], [3, 2]],
        "crossings": [],
        "rotation": {
            "v0": [0, 2],
            "v1": [1, 3, 0],
            "v2": [4, 1, 2],
            "v3": [4, 3],
        },
        "outer_face": {"edge": 0, "from": 1},
    }
    g = build_one_plane_graph(d)
    assert not assert_three_connected(g)  # {1,2} separates


def test_assert_three_connected_cut_vertex():
    g = build_one_plane_graph(doc("bowtie"))
    assert not assert_three_connected(g)


def test_dump_format():
    gp = gplus_of("bowtie")
    tree = contract_to_gstar(gp)
    text = tree.dump()
    assert "root" in text
    assert "thick" in text
