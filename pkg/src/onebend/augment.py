"""Kite augmentation: input graph -> triangulated 1-plane multigraph.

Stages: add the four flank edges of every crossing (hugging the crossing
inside each wedge), drop originals that became parallel to a new copy,
drop one copy of every vertex-free lens, normalize a degree-two outer
face, then fan an extra vertex into every remaining non-triangular face.

All surgery is local rotation editing; faces are re-traced when each
stage's graph is rebuilt, and the outer face is carried through as an
anchor dart that the editing rules keep on the outer walk.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import CrossingOnBigFace, ValidationError
from .model import (EXTRA, EXTRA_FAN, KITE, ORIGINAL, Dart, EdgeRec,
                    OnePlaneGraph, VertexRec, rev)

ORIGINAL_PARALLEL = "original-parallel"
EMPTY_LENS = "empty-lens"
OUTER_DEGREE_TWO = "outer-degree-two"


@dataclass
class AugmentTrace:
    added_kite_edges: List[Tuple[int, int]] = field(default_factory=list)
    removed_edges: List[Tuple[int, str, int]] = field(default_factory=list)
    extra_vertices: List[Tuple[int, Tuple]] = field(default_factory=list)


def _anchor_of(g: OnePlaneGraph) -> Dart:
    return g.outer_anchor if g.outer_anchor is not None \
        else g.faces[g.outer_face].darts[0]


def _insert_after(lst: List[Dart], ref: Dart, new: Dart) -> None:
    lst.insert(lst.index(ref) + 1, new)


def _insert_before(lst: List[Dart], ref: Dart, new: Dart) -> None:
    lst.insert(lst.index(ref), new)


# ---- kite augmentation ----------------------------------------------------


def kite_augment(g: OnePlaneGraph) -> Tuple[OnePlaneGraph, AugmentTrace]:
    """Add the four flank edges of every crossing pair (graph G1)."""
    if not g.is_simple:
        raise ValidationError("kite augmentation expects a simple input graph")
    rot = {n: list(ds) for n, ds in g.rot.items()}
    edges = dict(g.edges)
    trace = AugmentTrace()
    anchor = _anchor_of(g)
    next_eid = max(edges, default=-1) + 1

    for cid in sorted(g.crossings):
        xdarts = g.rot[("x", cid)]
        for i in range(4):
            d_a = xdarts[i]              # x -> t_i
            d_b = xdarts[(i + 1) % 4]    # x -> t_{i+1}
            va = g.edges[d_b[0]].endpoint(d_b[1])  # t_{i+1}
            vb = g.edges[d_a[0]].endpoint(d_a[1])  # t_i
            eid = next_eid
            next_eid += 1
            edges[eid] = EdgeRec(eid, va, vb, KITE)
            trace.added_kite_edges.append((eid, cid))
            # wedge corner darts: t_{i+1} -> x followed by x -> t_i
            into_x_a = rev(d_b)          # t_{i+1} -> x
            into_x_b = rev(d_a)          # t_i -> x  (as a leaving dart at t_i)
            _insert_after(rot[("v", va)], into_x_a, (eid, 0, True))
            _insert_before(rot[("v", vb)], into_x_b, (eid, 0, False))
            if anchor in (into_x_a, d_a):
                # the wedge part of the outer face becomes a triangle; the
                # remainder on the other side of the new edge stays outer
                anchor = (eid, 0, True)

    g1 = OnePlaneGraph(g.vertices, edges, g.crossings, rot,
                       outer_anchor=anchor, stage="kited")
    return g1, trace


# ---- edge removal with anchor recovery -------------------------------------


def _recover_anchor(g: OnePlaneGraph, removed: set) -> Optional[Dart]:
    """Anchor dart valid after deleting `removed` edges: the outer face
    merges with every face reachable through removed edges."""
    merged = {g.outer_face}
    frontier = [g.outer_face]
    while frontier:
        nxt = []
        for fi in frontier:
            for d in g.faces[fi].darts:
                if d[0] in removed:
                    other = g.face_of_dart[rev(d)]
                    if other not in merged:
                        merged.add(other)
                        nxt.append(other)
        frontier = nxt
    for fi in sorted(merged, key=lambda fi: 0 if fi == g.outer_face else 1 + fi):
        for d in g.faces[fi].darts:
            if d[0] not in removed:
                return d
    return None


def _remap_uncrossed(d: Dart, uncrossed: set) -> Dart:
    """Fragment ends of a formerly crossed edge collapse onto end 0."""
    eid, end, fwd = d
    if eid in uncrossed and end == 1:
        return (eid, 0, not fwd)
    return d


def _delete_edges(g: OnePlaneGraph, eids: List[int], stage: str) -> OnePlaneGraph:
    """Remove edges (dissolving crossings of removed crossed edges)."""
    removed = set(eids)
    rot = {n: list(ds) for n, ds in g.rot.items()}
    edges = dict(g.edges)
    crossings = dict(g.crossings)
    uncrossed = set()

    anchor = _anchor_of(g)
    if anchor[0] in removed:
        anchor = _recover_anchor(g, removed)
        if anchor is None:
            raise ValidationError("deleting %r would leave no outer anchor" % eids)

    for eid in eids:
        e = edges.pop(eid)
        if g.is_crossed(eid):
            cid = g.crossing_of_edge[eid]
            e1, e2 = crossings.pop(cid)
            partner = e2 if e1 == eid else e1
            uncrossed.add(partner)
            rot[("v", e.u)].remove((eid, 0, True))
            rot[("v", e.v)].remove((eid, 1, True))
            del rot[("x", cid)]
            # the partner's far-end fragment collapses onto fragment 0
            pv = rot[("v", edges[partner].v)]
            pv[pv.index((partner, 1, True))] = (partner, 0, False)
        else:
            rot[("v", e.u)].remove((eid, 0, True))
            rot[("v", e.v)].remove((eid, 0, False))

    if uncrossed:
        rot = {n: [_remap_uncrossed(d, uncrossed) for d in ds]
               for n, ds in rot.items()}
        anchor = _remap_uncrossed(anchor, uncrossed)

    return OnePlaneGraph(g.vertices, edges, crossings, rot,
                         outer_anchor=anchor, stage=stage)


# ---- pruning ----------------------------------------------------------------


def prune_parallels(g1: OnePlaneGraph) -> Tuple[OnePlaneGraph, AugmentTrace]:
    """Drop originals parallel to a kite copy, then one copy of every
    vertex-free lens (graph G2, before outer-face normalization)."""
    trace = AugmentTrace()
    g = g1

    removals = []
    for (u, v), eids in sorted(g.parallel_families().items()):
        originals = [e for e in eids if g.edges[e].kind == ORIGINAL]
        copies = [e for e in eids if g.edges[e].kind != ORIGINAL]
        if originals and copies:
            partner = min(copies)
            for o in originals:
                removals.append((o, ORIGINAL_PARALLEL, partner))
    if removals:
        trace.removed_edges.extend(removals)
        g = _delete_edges(g, [r[0] for r in removals], "pruned")

    while True:
        lens_removals = []
        dropped = set()
        for fi, fw in enumerate(g.faces):
            if fw.degree != 2 or fi == g.outer_face:
                continue
            e1, e2 = sorted(d[0] for d in fw.darts)
            if e1 in dropped or e2 in dropped:
                continue
            assert not g.is_crossed(e1) and not g.is_crossed(e2)
            lens_removals.append((e2, EMPTY_LENS, e1))
            dropped.add(e2)
        if not lens_removals:
            break
        trace.removed_edges.extend(lens_removals)
        g = _delete_edges(g, [r[0] for r in lens_removals], "pruned")

    if g.stage != "pruned":
        g = OnePlaneGraph(g.vertices, g.edges, g.crossings, g.rot,
                          outer_anchor=_anchor_of(g), stage="pruned")
    return g, trace


def normalize_outer_face(g2: OnePlaneGraph) -> Tuple[OnePlaneGraph, AugmentTrace]:
    """Reduce a degree-two outer face (two parallel copies) to degree three."""
    trace = AugmentTrace()
    g = g2
    while g.faces[g.outer_face].degree == 2:
        e1, e2 = sorted(d[0] for d in g.faces[g.outer_face].darts)
        trace.removed_edges.append((e2, OUTER_DEGREE_TWO, e1))
        g = _delete_edges(g, [e2], "normalized")
    if g.stage != "normalized":
        g = OnePlaneGraph(g.vertices, g.edges, g.crossings, g.rot,
                          outer_anchor=_anchor_of(g), stage="normalized")
    return g, trace


# ---- triangulation ----------------------------------------------------------


def triangulate_faces(g2: OnePlaneGraph) -> Tuple[OnePlaneGraph, AugmentTrace]:
    """Fan an extra vertex into every non-triangular face (graph G+)."""
    trace = AugmentTrace()
    rot = {n: list(ds) for n, ds in g2.rot.items()}
    vertices = dict(g2.vertices)
    edges = dict(g2.edges)
    next_vid = max(vertices, default=-1) + 1
    next_eid = max(edges, default=-1) + 1
    anchor = _anchor_of(g2)

    for fi, fw in enumerate(g2.faces):
        if fw.degree == 3:
            continue
        if any(c[0] == "x" for c in fw.corners):
            raise CrossingOnBigFace(
                "non-triangular face %d has a crossing corner" % fi)
        w = next_vid
        next_vid += 1
        vertices[w] = VertexRec(w, EXTRA)
        trace.extra_vertices.append((w, fw.corners))
        rot[("v", w)] = []
        walk = fw.darts
        m = len(walk)
        for k in range(m):
            corner = fw.corners[k][1]
            outgoing = walk[(k + 1) % m]
            eid = next_eid
            next_eid += 1
            edges[eid] = EdgeRec(eid, w, corner, EXTRA_FAN)
            rot[("v", w)].append((eid, 0, True))
            _insert_after(rot[("v", corner)], outgoing, (eid, 0, False))

    gplus = OnePlaneGraph(vertices, edges, g2.crossings, rot,
                          outer_anchor=anchor, stage="triangulated")
    return gplus, trace


# ---- whole augmentation -----------------------------------------------------


@dataclass
class AugmentResult:
    kited: OnePlaneGraph
    pruned: OnePlaneGraph
    normalized: OnePlaneGraph
    triangulated: OnePlaneGraph
    traces: List[AugmentTrace]

    @property
    def redirects(self) -> Dict[int, int]:
        """removed edge id -> surviving parallel partner."""
        return {eid: partner
                for t in self.traces for (eid, _reason, partner) in t.removed_edges}

    @property
    def extra_vertex_ids(self) -> set:
        return {w for t in self.traces for (w, _f) in t.extra_vertices}


def augment(g: OnePlaneGraph) -> AugmentResult:
    g1, t1 = kite_augment(g)
    g2, t2 = prune_parallels(g1)
    g2n, t3 = normalize_outer_face(g2)
    gplus, t4 = triangulate_faces(g2n)
    return AugmentResult(g1, g2, g2n, gplus, [t1, t2, t3, t4])
