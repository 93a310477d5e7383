"""Random 1-plane instance generator for property testing.

Construction: lay the first n cells of a near-square grid (all inner faces
quadrilaterals), insert a crossing diagonal pair into a density-chosen
subset of the quad cells, then delete a random subset of the uncrossed
edges while keeping the graph connected.  Deletions create cut vertices
and separation pairs; deleting the boundary side of a crossed cell merges
its kite face with the outer face, so crossings land on the outer face
with positive probability.

The PRNG is Python's random.Random (MT19937) seeded with the string
"onebend:<n>:<seed>:<density>", which CPython documents as reproducible,
so identical parameters give byte-identical documents everywhere.
"""

from __future__ import annotations

import math
import random
from typing import Dict, List, Tuple

from .docs import input_document
from .geometry import Q, QZERO, cross, Point
from .model import build_one_plane_graph

DELETE_FRACTION = 0.18


def _ccw_sorted(items, center):
    """Sort (payload, direction) items counterclockwise by exact angle."""
    def half(d):
        return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1

    import functools

    def cmp(a, b):
        da, db = a[1], b[1]
        ha, hb = half(da), half(db)
        if ha != hb:
            return -1 if ha < hb else 1
        c = da[0] * db[1] - da[1] * db[0]
        if c > 0:
            return -1
        if c < 0:
            return 1
        return 0

    return [p for p, _d in sorted(items, key=functools.cmp_to_key(cmp))]


def generate_document(n: int, seed: int, density: float) -> dict:
    """Deterministic valid 1-plane instance with n vertices."""
    if n < 3:
        raise ValueError("need n >= 3")
    if not (0.0 <= density <= 1.0):
        raise ValueError("density must be within [0, 1]")

    rng = random.Random("onebend:%d:%d:%r" % (n, seed, density))
    w = max(2, math.ceil(math.sqrt(n)))

    def cell(r, c):
        return r * w + c

    def coords(v):
        return (v % w, v // w)

    edges: List[Tuple[int, int]] = []
    edge_id: Dict[Tuple[int, int], int] = {}
    for v in range(n):
        c, r = coords(v)
        if c + 1 < w and v + 1 < n:
            edge_id[(v, v + 1)] = len(edges)
            edges.append((v, v + 1))
        if v + w < n:
            edge_id[(v, v + w)] = len(edges)
            edges.append((v, v + w))

    quads = []
    for v in range(n):
        c, r = coords(v)
        a, b, d, e = v, v + 1, v + w, v + w + 1
        if c + 1 >= w or e >= n:
            continue
        if all(k in edge_id for k in ((a, b), (a, d), (b, e), (d, e))):
            quads.append(v)

    shuffled_quads = list(quads)
    rng.shuffle(shuffled_quads)
    n_cross = int(density * len(quads) + 0.5)
    crossing_cells = sorted(shuffled_quads[:n_cross])

    crossings = []
    diag_ids = {}
    for v in crossing_cells:
        a, b, d, e = v, v + 1, v + w, v + w + 1
        e1 = len(edges)
        edges.append((a, e))
        e2 = len(edges)
        edges.append((b, d))
        diag_ids[v] = (e1, e2)
        crossings.append((e1, e2))

    crossed_edges = {e for pair in crossings for e in pair}
    adjacency: Dict[int, set] = {v: set() for v in range(n)}
    alive = set(range(len(edges)))
    for i, (u, v) in enumerate(edges):
        adjacency[u].add(i)
        adjacency[v].add(i)

    def connected_without(eid):
        u0 = edges[eid][0]
        seen = {u0}
        stack = [u0]
        while stack:
            x = stack.pop()
            for i in adjacency[x]:
                if i == eid or i not in alive:
                    continue
                y = edges[i][0] if edges[i][1] == x else edges[i][1]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == n

    candidates = [i for i in range(len(edges)) if i not in crossed_edges]
    rng.shuffle(candidates)
    to_delete = int(DELETE_FRACTION * len(candidates))
    deleted = 0
    for eid in candidates:
        if deleted >= to_delete:
            break
        if connected_without(eid):
            alive.discard(eid)
            deleted += 1

    # compact edge ids
    keep = sorted(alive)
    remap = {old: new for new, old in enumerate(keep)}
    final_edges = [edges[old] for old in keep]
    final_crossings = [[remap[a], remap[b]] for a, b in crossings]

    rotation: Dict[str, list] = {}
    for v in range(n):
        x, y = coords(v)
        items = []
        for old in sorted(adjacency[v]):
            if old not in alive:
                continue
            u, z = edges[old]
            other = z if u == v else u
            ox, oy = coords(other)
            items.append((remap[old], (ox - x, oy - y)))
        rotation["v%d" % v] = _ccw_sorted(items, (x, y))

    for j, cellv in enumerate(sorted(diag_ids)):
        a = cellv
        b, d, e = a + 1, a + w, a + w + 1
        e1, e2 = (remap[x] for x in diag_ids[cellv])
        # counterclockwise around the cell centre: far corners at
        # 45, 135, 225, 315 degrees
        rotation["x%d" % j] = [[e1, e], [e2, d], [e1, a], [e2, b]]

    doc = input_document(n, final_edges, final_crossings, rotation, None)
    g = build_one_plane_graph(doc)

    # designate the unbounded face: walks live on integer/half-integer
    # grid coordinates, so the signed area picks it out exactly
    def node_point(node):
        if node[0] == "v":
            x, y = coords(node[1])
            return Point(Q(x), Q(y))
        cellv = sorted(diag_ids)[node[1]]
        x, y = coords(cellv)
        return Point(Q(2 * x + 1, 2), Q(2 * y + 1, 2))

    best = None
    for fi, fw in enumerate(g.faces):
        pts = [node_point(c) for c in fw.corners]
        area = QZERO
        for i in range(len(pts)):
            area += cross(pts[i], pts[(i + 1) % len(pts)])
        if best is None or area < best[0]:
            best = (area, fi)
    outer = g.faces[best[1]]
    anchor = None
    for d in outer.darts:
        tail = g.dart_tail(d)
        if tail[0] == "v":
            er = g.edges[d[0]]
            frm = er.endpoint(d[1]) if g.is_crossed(d[0]) else \
                (er.u if d[2] else er.v)
            anchor = {"edge": d[0], "from": frm}
            break
    assert anchor is not None
    doc["outer_face"] = anchor
    build_one_plane_graph(doc)
    return doc
