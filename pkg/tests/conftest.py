"""Shared fixture documents: small 1-plane embeddings built by hand."""

import copy

import pytest


def k4_doc():
    # planar K4, outer triangle (0,1,2), vertex 3 inside
    return {
        "n": 4,
        "edges": [[0, 1], [1, 2], [2, 0], [0, 3], [1, 3], [2, 3]],
        "crossings": [],
        "rotation": {
            "v0": [0, 3, 2],
            "v1": [1, 4, 0],
            "v2": [2, 5, 1],
            "v3": [5, 3, 4],
        },
        "outer_face": {"edge": 0, "from": 1},
    }


def lone_pair_doc():
    # two edges crossing once; planarization is a star with one face
    return {
        "n": 4,
        "edges": [[0, 2], [1, 3]],
        "crossings": [[0, 1]],
        "rotation": {
            "v0": [0], "v1": [1], "v2": [0], "v3": [1],
            "x0": [[0, 2], [1, 3], [0, 0], [1, 1]],
        },
        "outer_face": None,
    }


def kite_doc():
    # K4 with crossing diagonals inside the 4-cycle; outer face is the quad
    return {
        "n": 4,
        "edges": [[0, 1], [1, 2], [2, 3], [3, 0], [0, 2], [1, 3]],
        "crossings": [[4, 5]],
        "rotation": {
            "v0": [0, 4, 3],
            "v1": [1, 5, 0],
            "v2": [2, 4, 1],
            "v3": [3, 5, 2],
            "x0": [[4, 2], [5, 3], [4, 0], [5, 1]],
        },
        "outer_face": {"edge": 0, "from": 1},
    }


def c5_doc():
    return {
        "n": 5,
        "edges": [[0, 1], [1, 2], [2, 3], [3, 4], [4, 0]],
        "crossings": [],
        "rotation": {
            "v0": [4, 0], "v1": [0, 1], "v2": [1, 2], "v3": [2, 3], "v4": [3, 4],
        },
        "outer_face": {"edge": 0, "from": 1},
    }


def fig5_doc():
    """Triangulated 1-plane graph with two crossing pairs; pair x0 forms an
    empty kite, pair x1 has its crossing on the designated outer face."""
    return {
        "n": 6,
        "edges": [[0, 1], [1, 2], [2, 3], [3, 0], [0, 2], [1, 3], [4, 0], [4, 1],
                  [5, 2], [5, 3], [4, 2], [1, 5], [4, 5], [0, 5]],
        "crossings": [[4, 5], [10, 11]],
        "rotation": {
            "v0": [0, 4, 3, 13, 6],
            "v1": [11, 1, 5, 0, 7],
            "v2": [8, 2, 4, 1, 10],
            "v3": [2, 9, 3, 5],
            "v4": [10, 7, 6, 12],
            "v5": [13, 9, 8, 11, 12],
            "x0": [[4, 2], [5, 3], [4, 0], [5, 1]],
            "x1": [[11, 5], [10, 2], [11, 1], [10, 4]],
        },
        "outer_face": {"edge": 12, "from": 4},
    }


def k5_doc():
    """1-planar K5: square with crossing diagonals plus an outside apex."""
    return {
        "n": 5,
        "edges": [[0, 1], [1, 2], [2, 3], [3, 0], [0, 2], [1, 3], [4, 0], [4, 1],
                  [4, 2], [4, 3]],
        "crossings": [[4, 5]],
        "rotation": {
            "v0": [0, 4, 3, 6],
            "v1": [7, 1, 5, 0],
            "v2": [8, 2, 4, 1],
            "v3": [2, 9, 3, 5],
            "v4": [7, 6, 9, 8],
            "x0": [[4, 2], [5, 3], [4, 0], [5, 1]],
        },
        "outer_face": {"edge": 6, "from": 0},
    }


def bowtie_doc():
    # two triangles sharing the cut vertex 2
    return {
        "n": 5,
        "edges": [[0, 1], [1, 2], [2, 0], [2, 3], [3, 4], [4, 2]],
        "crossings": [],
        "rotation": {
            "v0": [0, 2],
            "v1": [1, 0],
            "v2": [5, 2, 1, 3],
            "v3": [4, 3],
            "v4": [5, 4],
        },
        "outer_face": {"edge": 0, "from": 1},
    }


def outer_pair_doc():
    """Two crossing pairs hugging the designated outer region from both
    sides; augmentation leaves a crossing on the outer face of the
    triangulated graph, forcing the trapezoid construction at the root."""
    return {
        "n": 6,
        "edges": [[0, 2], [1, 3], [0, 4], [1, 5]],
        "crossings": [[0, 1], [2, 3]],
        "rotation": {
            "v0": [2, 0], "v1": [3, 1], "v2": [0], "v3": [1], "v4": [2], "v5": [3],
            "x0": [[1, 1], [0, 0], [1, 3], [0, 2]],
            "x1": [[2, 4], [3, 5], [2, 0], [3, 1]],
        },
        "outer_face": {"edge": 0, "from": 0},
    }


ALL_DOCS = {
    "k4": k4_doc, "lone_pair": lone_pair_doc, "kite": kite_doc, "c5": c5_doc,
    "fig5": fig5_doc, "k5": k5_doc, "bowtie": bowtie_doc,
    "outer_pair": outer_pair_doc,
}


@pytest.fixture
def docs():
    return {name: fn() for name, fn in ALL_DOCS.items()}


def doc(name):
    return copy.deepcopy(ALL_DOCS[name]())
