"""Combinatorial model of 1-plane (multi)graphs.

A graph is stored as vertices, edges, crossing pairs and the rotation
system of its planarization.  Planarization nodes are ('v', vertex_id) or
('x', crossing_id).  Every edge is crossed at most once, so it has one
fragment (uncrossed) or two (one per endpoint side).  A dart is
(edge_id, end, forward): `end` names the endpoint side of the fragment
(0 = edge.u side, 1 = edge.v side; uncrossed edges only have end 0) and
`forward` means "leaving the endpoint-side node".

Faces are traced once at construction with the face-on-left rule
next(d) = ccw_prev(reverse(d)); with counterclockwise rotations this makes
inner faces counterclockwise walks and the outer face a clockwise one.
Graphs are immutable; every pipeline stage builds a fresh one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (AdjacentCrossing, BadRotation, DensityExceeded,
                     EdgeCrossedTwice, NotTriangulated, ValidationError)

Node = Tuple[str, int]
Dart = Tuple[int, int, bool]

ORIGINAL = "original"
KITE = "kite"
EXTRA_FAN = "extra-fan"
THICK = "thick"
EXTRA = "extra"


@dataclass(frozen=True)
class VertexRec:
    id: int
    kind: str = ORIGINAL


@dataclass(frozen=True)
class EdgeRec:
    id: int
    u: int
    v: int
    kind: str = ORIGINAL

    def other(self, w: int) -> int:
        return self.v if w == self.u else self.u

    def endpoint(self, end: int) -> int:
        return self.u if end == 0 else self.v

    def end_of(self, w: int) -> int:
        if w == self.u:
            return 0
        if w == self.v:
            return 1
        raise ValueError("vertex %r not an endpoint of edge %r" % (w, self.id))


@dataclass(frozen=True)
class FaceWalk:
    darts: Tuple[Dart, ...]
    corners: Tuple[Node, ...]

    @property
    def degree(self) -> int:
        return len(self.darts)

    @property
    def crossing_corners(self) -> Tuple[int, ...]:
        return tuple(c[1] for c in self.corners if c[0] == "x")

    @property
    def vertex_corners(self) -> Tuple[int, ...]:
        return tuple(c[1] for c in self.corners if c[0] == "v")


@dataclass(frozen=True)
class Kite:
    corners: Tuple[int, int, int, int]   # circular order around the crossing
    pair: Tuple[int, int]                # the two crossing edge ids
    boundary: Tuple[int, int, int, int]  # flank edges between consecutive corners


def rev(d: Dart) -> Dart:
    return (d[0], d[1], not d[2])


class OnePlaneGraph:
    """Immutable 1-plane multigraph with planarization rotation system."""

    def __init__(self, vertices, edges, crossings, rot, outer_anchor=None,
                 stage="input", validate=True):
        self.vertices: Dict[int, VertexRec] = dict(vertices)
        self.edges: Dict[int, EdgeRec] = dict(edges)
        self.crossings: Dict[int, Tuple[int, int]] = dict(crossings)
        self.rot: Dict[Node, Tuple[Dart, ...]] = {n: tuple(ds) for n, ds in rot.items()}
        self.stage = stage

        self.crossing_of_edge: Dict[int, int] = {}
        for cid, (e1, e2) in self.crossings.items():
            for e in (e1, e2):
                if e in self.crossing_of_edge:
                    raise EdgeCrossedTwice("edge %d appears in two crossing pairs" % e)
                self.crossing_of_edge[e] = cid

        self._rot_index: Dict[Dart, Tuple[Node, int]] = {}
        for node, darts in self.rot.items():
            for i, d in enumerate(darts):
                if d in self._rot_index:
                    raise BadRotation("dart %r listed twice" % (d,))
                self._rot_index[d] = (node, i)

        if validate:
            self._validate_structure()

        self.faces: Tuple[FaceWalk, ...] = self._trace()
        self.face_of_dart: Dict[Dart, int] = {}
        for fi, fw in enumerate(self.faces):
            for d in fw.darts:
                self.face_of_dart[d] = fi

        if outer_anchor is not None and outer_anchor not in self.face_of_dart:
            raise BadRotation("outer anchor %r is not a dart of the graph" % (outer_anchor,))
        self.outer_anchor: Optional[Dart] = outer_anchor
        self.outer_face: int = (self.face_of_dart[outer_anchor]
                                if outer_anchor is not None else 0)

        if validate:
            self._validate_euler()

    # ---- dart / node helpers -------------------------------------------

    def vnode(self, v: int) -> Node:
        return ("v", v)

    def is_crossed(self, eid: int) -> bool:
        return eid in self.crossing_of_edge

    def frag_ends(self, eid: int) -> Tuple[int, ...]:
        return (0, 1) if self.is_crossed(eid) else (0,)

    def dart_tail(self, d: Dart) -> Node:
        eid, end, fwd = d
        e = self.edges[eid]
        vertex_node: Node = ("v", e.endpoint(end))
        if not self.is_crossed(eid):
            far: Node = ("v", e.endpoint(1 - end))
        else:
            far = ("x", self.crossing_of_edge[eid])
        return vertex_node if fwd else far

    def dart_head(self, d: Dart) -> Node:
        return self.dart_tail(rev(d))

    def edge_darts(self, eid: int) -> List[Dart]:
        return [(eid, end, f) for end in self.frag_ends(eid) for f in (True, False)]

    def vertex_dart(self, eid: int, v: int) -> Dart:
        """The dart leaving vertex v along edge eid."""
        e = self.edges[eid]
        end = e.end_of(v)
        if self.is_crossed(eid):
            return (eid, end, True)
        return (eid, 0, end == 0)

    def next_dart(self, d: Dart) -> Dart:
        h = self.dart_head(d)
        node, i = self._rot_index[rev(d)]
        assert node == h
        lst = self.rot[h]
        return lst[(i - 1) % len(lst)]

    def darts_at(self, node: Node) -> Tuple[Dart, ...]:
        return self.rot[node]

    # ---- validation -----------------------------------------------------

    def _expected_darts(self) -> Dict[Node, List[Dart]]:
        exp: Dict[Node, List[Dart]] = {("v", v): [] for v in self.vertices}
        for cid in self.crossings:
            exp[("x", cid)] = []
        for eid, e in self.edges.items():
            if e.u == e.v:
                raise ValidationError("edge %d is a self-loop" % eid)
            if e.u not in self.vertices or e.v not in self.vertices:
                raise ValidationError("edge %d has unknown endpoint" % eid)
            if self.is_crossed(eid):
                cid = self.crossing_of_edge[eid]
                exp[("v", e.u)].append((eid, 0, True))
                exp[("v", e.v)].append((eid, 1, True))
                exp[("x", cid)].append((eid, 0, False))
                exp[("x", cid)].append((eid, 1, False))
            else:
                exp[("v", e.u)].append((eid, 0, True))
                exp[("v", e.v)].append((eid, 0, False))
        return exp

    def _validate_structure(self) -> None:
        for cid, (e1, e2) in self.crossings.items():
            if e1 == e2:
                raise ValidationError("crossing %d pairs an edge with itself" % cid)
            for e in (e1, e2):
                if e not in self.edges:
                    raise ValidationError("crossing %d names unknown edge %d" % (cid, e))
            a, b = self.edges[e1], self.edges[e2]
            if {a.u, a.v} & {b.u, b.v}:
                raise AdjacentCrossing(
                    "crossing edges %d and %d share an endpoint" % (e1, e2))

        exp = self._expected_darts()
        if set(exp) != set(self.rot):
            missing = set(exp) - set(self.rot)
            extra = set(self.rot) - set(exp)
            raise BadRotation("rotation nodes mismatch (missing %r, extra %r)"
                              % (sorted(missing), sorted(extra)))
        for node, darts in self.rot.items():
            if sorted(darts) != sorted(exp[node]):
                raise BadRotation("rotation at %r does not list exactly the "
                                  "incident fragment ends" % (node,))
        for cid in self.crossings:
            darts = self.rot[("x", cid)]
            if len(darts) != 4:
                raise BadRotation("crossing %d does not have four fragments" % cid)
            eids = [d[0] for d in darts]
            if eids[0] == eids[1] or eids[1] == eids[2]:
                raise BadRotation("fragments at crossing %d do not alternate" % cid)

    def _validate_euler(self) -> None:
        n_nodes = len(self.vertices) + len(self.crossings)
        n_frags = sum(len(self.frag_ends(eid)) for eid in self.edges)
        n_comp = len(self.component_nodes())
        # tracing yields one outer walk per component, so componentwise
        # Euler (V-E+F = 1+C with a shared outer face) reads V-E+F = 2C here
        if n_nodes - n_frags + len(self.faces) != 2 * n_comp:
            raise BadRotation(
                "face tracing violates Euler's formula (V=%d, E=%d, F=%d, C=%d)"
                % (n_nodes, n_frags, len(self.faces), n_comp))

    # ---- faces ----------------------------------------------------------

    def _trace(self) -> Tuple[FaceWalk, ...]:
        seen = set()
        faces: List[FaceWalk] = []
        for node in sorted(self.rot):
            for d0 in self.rot[node]:
                if d0 in seen:
                    continue
                walk = []
                d = d0
                while True:
                    walk.append(d)
                    seen.add(d)
                    d = self.next_dart(d)
                    if d == d0:
                        break
                corners = tuple(self.dart_head(d) for d in walk)
                faces.append(FaceWalk(tuple(walk), corners))
        return tuple(faces)

    def component_nodes(self) -> List[set]:
        parent: Dict[Node, Node] = {n: n for n in self.rot}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for eid in self.edges:
            for end in self.frag_ends(eid):
                d = (eid, end, True)
                a, b = find(self.dart_tail(d)), find(self.dart_head(d))
                if a != b:
                    parent[a] = b
        comps: Dict[Node, set] = {}
        for n in self.rot:
            comps.setdefault(find(n), set()).add(n)
        return [comps[k] for k in sorted(comps)]

    # ---- derived structure ----------------------------------------------

    def adjacency(self) -> Dict[int, set]:
        adj: Dict[int, set] = {v: set() for v in self.vertices}
        for e in self.edges.values():
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
        return adj

    def parallel_families(self) -> Dict[Tuple[int, int], List[int]]:
        fam: Dict[Tuple[int, int], List[int]] = {}
        for eid in sorted(self.edges):
            e = self.edges[eid]
            key = (min(e.u, e.v), max(e.u, e.v))
            fam.setdefault(key, []).append(eid)
        return {k: v for k, v in fam.items() if len(v) >= 2}

    @property
    def is_simple(self) -> bool:
        return not self.parallel_families()

    def crossing_cycle(self, cid: int) -> Tuple[int, int, int, int]:
        """Endpoint vertices in counterclockwise order around the crossing."""
        darts = self.rot[("x", cid)]
        return tuple(self.edges[d[0]].endpoint(d[1]) for d in darts)  # type: ignore

    def flank_faces(self, cid: int) -> List[int]:
        """Faces at the four wedges of a crossing (with multiplicity)."""
        return [self.face_of_dart[rev(d)] for d in self.rot[("x", cid)]]

    def canonical_key(self):
        """Hashable identity used by structural-equality tests."""
        def rotkey(darts):
            if not darts:
                return ()
            rots = [tuple(darts[i:] + darts[:i]) for i in range(len(darts))]
            return min(rots)

        return (
            tuple(sorted((v.id, v.kind) for v in self.vertices.values())),
            tuple(sorted((e.id, e.u, e.v, e.kind) for e in self.edges.values())),
            tuple(sorted((c, p) for c, p in self.crossings.items())),
            tuple(sorted((n, rotkey(list(ds))) for n, ds in self.rot.items())),
            frozenset(self.faces[self.outer_face].darts),
        )


# ---- construction from an input document --------------------------------


def build_one_plane_graph(doc: dict) -> OnePlaneGraph:
    """Validate an input document and construct the 1-plane graph."""
    try:
        n = int(doc["n"])
        edge_list = [tuple(int(x) for x in e) for e in doc["edges"]]
        crossing_list = [tuple(int(x) for x in c) for c in doc.get("crossings", [])]
        rotation = doc["rotation"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError("malformed document: %s" % exc) from None

    if n < 1:
        raise ValidationError("vertex count must be positive")
    m = len(edge_list)
    if n >= 3 and m > 4 * n - 8:
        raise DensityExceeded("m=%d exceeds the 1-planar bound 4n-8=%d"
                              % (m, 4 * n - 8))

    vertices = {i: VertexRec(i) for i in range(n)}
    edges = {}
    seen_pairs = set()
    for i, (u, v) in enumerate(edge_list):
        if not (0 <= u < n and 0 <= v < n):
            raise ValidationError("edge %d endpoint out of range" % i)
        if u == v:
            raise ValidationError("edge %d is a self-loop" % i)
        key = (min(u, v), max(u, v))
        if key in seen_pairs:
            raise ValidationError("input graph must be simple; duplicate edge %r" % (key,))
        seen_pairs.add(key)
        edges[i] = EdgeRec(i, u, v)

    crossings = {}
    for j, (e1, e2) in enumerate(crossing_list):
        if not (0 <= e1 < m and 0 <= e2 < m):
            raise ValidationError("crossing %d names unknown edge" % j)
        crossings[j] = (e1, e2)

    crossing_of = {}
    for j, (e1, e2) in crossings.items():
        for e in (e1, e2):
            if e in crossing_of:
                raise EdgeCrossedTwice("edge %d appears in two crossing pairs" % e)
            crossing_of[e] = j

    rot = {}
    try:
        for v in range(n):
            entries = rotation["v%d" % v]
            darts = []
            for eid in entries:
                eid = int(eid)
                if eid not in edges:
                    raise BadRotation("rotation at v%d names unknown edge %d" % (v, eid))
                e = edges[eid]
                if v not in (e.u, e.v):
                    raise BadRotation("rotation at v%d names non-incident edge %d" % (v, eid))
                end = e.end_of(v)
                if eid in crossing_of:
                    darts.append((eid, end, True))
                else:
                    darts.append((eid, 0, end == 0))
            rot[("v", v)] = darts
        for j in crossings:
            entries = rotation["x%d" % j]
            darts = []
            for item in entries:
                eid, w = int(item[0]), int(item[1])
                if crossing_of.get(eid) != j:
                    raise BadRotation("rotation at x%d names edge %d not crossed there"
                                      % (j, eid))
                end = edges[eid].end_of(w)
                darts.append((eid, end, False))
            rot[("x", j)] = darts
    except KeyError as exc:
        raise BadRotation("rotation missing node %s" % exc) from None

    anchor = None
    outer = doc.get("outer_face")
    if outer:
        eid, frm = int(outer["edge"]), int(outer["from"])
        if eid not in edges:
            raise ValidationError("outer_face names unknown edge %d" % eid)
        e = edges[eid]
        end = e.end_of(frm)
        anchor = (eid, end, True) if eid in crossing_of else (eid, 0, end == 0)

    return OnePlaneGraph(vertices, edges, crossings, rot,
                         outer_anchor=anchor, stage="input")


# ---- operations -----------------------------------------------------------


def trace_faces(g: OnePlaneGraph) -> List[FaceWalk]:
    return list(g.faces)


def is_triangulated(g: OnePlaneGraph) -> bool:
    for fw in g.faces:
        if fw.degree != 3 or len(fw.crossing_corners) > 1:
            return False
    return True


def kite_violations(g: OnePlaneGraph, allow_outer_exception: bool = True):
    """Crossing pairs that do not form an empty kite.

    Works on any valid graph (triangulated or not); used both for the
    public check and for auditing the intermediate augmentation stages.
    """
    violations = []
    outer_pairs = []
    for cid in sorted(g.crossings):
        flanks = g.flank_faces(cid)
        if any(g.faces[f].degree != 3 for f in flanks):
            violations.append((cid, "non-triangular flank face"))
        elif g.outer_face in flanks:
            outer_pairs.append(cid)
    if allow_outer_exception:
        outer_pairs = outer_pairs[1:]
    violations.extend((cid, "crossing on outer face") for cid in outer_pairs)
    return violations


def empty_kite_check(g: OnePlaneGraph):
    """Violations of the empty-kite property, allowing the single
    outer-face exception.  Requires a triangulated graph."""
    if not is_triangulated(g):
        raise NotTriangulated("empty_kite_check requires a triangulated graph")
    return kite_violations(g, allow_outer_exception=True)


def kite_of(g: OnePlaneGraph, cid: int) -> Optional[Kite]:
    """The empty kite around a crossing, or None if a flank is not a
    triangle or lies on the outer face."""
    darts = g.rot[("x", cid)]
    corners = g.crossing_cycle(cid)
    boundary = []
    for i in range(4):
        # wedge between corner i+1 and corner i is the face left of the
        # incoming fragment from corner i+1
        fidx = g.face_of_dart[rev(darts[(i + 1) % 4])]
        fw = g.faces[fidx]
        if fw.degree != 3 or fidx == g.outer_face:
            return None
        side = [d for d in fw.darts if d[0] not in (darts[0][0], darts[1][0])]
        if len(side) != 1:
            return None
        boundary.append(side[0][0])
    e1, e2 = g.crossings[cid]
    return Kite(corners, (e1, e2), tuple(boundary))


def split_components(g: OnePlaneGraph) -> List[OnePlaneGraph]:
    """Connected components as independent graphs (ids preserved)."""
    comps = g.component_nodes()
    if len(comps) == 1:
        return [g]
    out = []
    for nodes in comps:
        vids = {n[1] for n in nodes if n[0] == "v"}
        cids = {n[1] for n in nodes if n[0] == "x"}
        eids = {eid for eid, e in g.edges.items() if e.u in vids}
        anchor = g.outer_anchor
        if anchor is not None and anchor[0] not in eids:
            anchor = None
        out.append(OnePlaneGraph(
            {v: g.vertices[v] for v in sorted(vids)},
            {e: g.edges[e] for e in sorted(eids)},
            {c: g.crossings[c] for c in sorted(cids)},
            {n: g.rot[n] for n in nodes},
            outer_anchor=anchor, stage=g.stage))
    return out
