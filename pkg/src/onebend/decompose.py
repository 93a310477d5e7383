"""Decomposition of a triangulated 1-plane multigraph into 3-connected pieces.

Every separation pair of a triangulated 1-plane multigraph carries a family
of parallel edges whose outermost pair encloses the rest.  Cutting the dual
along all parallel copies splits the faces into regions; the region holding
the outer face keeps a thick edge per family, and the k-1 regions between
consecutive copies become child pieces (each keeps its outer copy and drops
the inner one).  Doing this for all families at once is equivalent to the
innermost-first replacement loop and yields the whole piece tree in one
pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import AssertionFailure, NotTriangulated
from .model import (THICK, Dart, EdgeRec, OnePlaneGraph, is_triangulated, rev)


@dataclass(frozen=True)
class ParallelBundle:
    poles: Tuple[int, int]
    edges: Tuple[int, ...]            # ordered; (first, last) enclose the rest
    inner_components: Tuple[Tuple[frozenset, frozenset], ...]  # (vertices, edges)


@dataclass
class Piece:
    graph: OnePlaneGraph
    bundles: Dict[int, "Bundle"] = field(default_factory=dict)  # thick eid -> bundle

    @property
    def thick_edges(self) -> List[int]:
        return sorted(self.bundles)


@dataclass
class Bundle:
    poles: Tuple[int, int]
    copies: Tuple[int, ...]           # e_1 .. e_k
    components: Tuple[Piece, ...]     # pieces for C-_1 .. C-_{k-1}
    dropped: EdgeRec = None           # record of the innermost copy e_k


@dataclass
class DecompTree:
    root: Piece
    source: OnePlaneGraph

    def pieces(self) -> List[Piece]:
        out = []
        stack = [self.root]
        while stack:
            p = stack.pop()
            out.append(p)
            for tid in sorted(p.bundles, reverse=True):
                stack.extend(reversed(p.bundles[tid].components))
        return out

    def dump(self) -> str:
        lines: List[str] = []

        def rec(piece: Piece, depth: int, label: str):
            g = piece.graph
            lines.append("%s%s: %d vertices, %d edges, %d crossings"
                         % ("  " * depth, label, len(g.vertices),
                            len(g.edges), len(g.crossings)))
            for tid in sorted(piece.bundles):
                b = piece.bundles[tid]
                lines.append("%sthick %d between %r, k=%d"
                             % ("  " * (depth + 1), tid, b.poles, len(b.copies)))
                for i, comp in enumerate(b.components):
                    rec(comp, depth + 2, "component %d" % (i + 1))

        rec(self.root, 0, "root")
        return "\n".join(lines)

    def expand(self) -> OnePlaneGraph:
        vertices, edges, crossings, rot = _expand_piece(self.root)
        return OnePlaneGraph(vertices, edges, crossings, rot,
                             outer_anchor=self.root.graph.outer_anchor,
                             stage=self.source.stage)


# ---- region machinery -------------------------------------------------------


class _UF:
    def __init__(self, n: int):
        self.p = list(range(n))

    def find(self, x: int) -> int:
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[ra] = rb


def _face_regions(g: OnePlaneGraph, cut: set) -> List[int]:
    """comp id per face after cutting dual adjacency along `cut` edges."""
    uf = _UF(len(g.faces))
    for eid in g.edges:
        if eid in cut:
            continue
        for end in g.frag_ends(eid):
            d = (eid, end, True)
            uf.union(g.face_of_dart[d], g.face_of_dart[rev(d)])
    return [uf.find(i) for i in range(len(g.faces))]


def _copy_sides(g: OnePlaneGraph, comp_of: Sequence[int], eid: int) -> Tuple[int, int]:
    d = (eid, 0, True)
    return comp_of[g.face_of_dart[d]], comp_of[g.face_of_dart[rev(d)]]


def _order_family(g: OnePlaneGraph, comp_of: Sequence[int], eids: List[int],
                  parent: int) -> Tuple[List[int], List[int]]:
    """Walk the copy/region cycle of one family starting at the parent
    region; returns (copies e_1..e_k, regions R_1..R_{k-1})."""
    sides = {eid: _copy_sides(g, comp_of, eid) for eid in eids}
    at: Dict[int, List[int]] = {}
    for eid, (a, b) in sides.items():
        at.setdefault(a, []).append(eid)
        at.setdefault(b, []).append(eid)
    assert parent in at, "parent region must touch the family"
    copies: List[int] = []
    regions: List[int] = []
    cur = parent
    e = min(at[parent])
    while True:
        copies.append(e)
        a, b = sides[e]
        cur = b if cur == a else a
        if cur == parent:
            break
        regions.append(cur)
        e1, e2 = at[cur]
        e = e2 if e == e1 else e1
    assert len(copies) == len(eids)
    return copies, regions


def _region_content(g: OnePlaneGraph, comp_of: Sequence[int], region: int):
    eids = set()
    for eid in g.edges:
        d = (eid, 0, True)
        if comp_of[g.face_of_dart[d]] == region or \
                comp_of[g.face_of_dart[rev(d)]] == region:
            eids.add(eid)
    vids = set()
    for eid in eids:
        vids.add(g.edges[eid].u)
        vids.add(g.edges[eid].v)
    return vids, eids


def find_parallel_bundles(g: OnePlaneGraph) -> List[ParallelBundle]:
    """One bundle per pole pair carrying parallels, copies ordered from the
    outer region inward."""
    if not is_triangulated(g):
        raise NotTriangulated("bundle discovery expects a triangulated graph")
    out = []
    for (u, v), eids in sorted(g.parallel_families().items()):
        assert not any(g.is_crossed(e) for e in eids), "crossed parallel copy"
        comp_of = _face_regions(g, set(eids))
        parent = comp_of[g.outer_face]
        copies, regions = _order_family(g, comp_of, eids, parent)
        comps = []
        for i, r in enumerate(regions):
            vids, redges = _region_content(g, comp_of, r)
            redges |= {copies[i], copies[i + 1]}
            vids |= {u, v}
            comps.append((frozenset(vids), frozenset(redges)))
        out.append(ParallelBundle((u, v), tuple(copies), tuple(comps)))
    return out


# ---- contraction ------------------------------------------------------------


def contract_to_gstar(gplus: OnePlaneGraph, validate: bool = False) -> DecompTree:
    """Replace every parallel family's inner graph by a thick edge,
    recursively, producing the tree of simple 3-connected triangulated
    pieces."""
    if not is_triangulated(gplus):
        raise NotTriangulated("contraction expects a triangulated multigraph")

    families = gplus.parallel_families()
    if not families:
        root_graph = OnePlaneGraph(gplus.vertices, gplus.edges, gplus.crossings,
                                   gplus.rot, outer_anchor=gplus.outer_anchor
                                   if gplus.outer_anchor is not None
                                   else gplus.faces[gplus.outer_face].darts[0],
                                   stage="piece")
        tree = DecompTree(Piece(root_graph), gplus)
        if validate:
            _validate_tree(tree)
        return tree

    cut = {e for eids in families.values() for e in eids}
    comp_of = _face_regions(gplus, cut)
    outer_comp = comp_of[gplus.outer_face]

    # BFS over regions through copies: earliest-discovered region of each
    # family's cycle is the one on the outer side
    order = {outer_comp: 0}
    frontier = [outer_comp]
    links: Dict[int, List[Tuple[int, int]]] = {}
    for eid in sorted(cut):
        a, b = _copy_sides(gplus, comp_of, eid)
        links.setdefault(a, []).append((eid, b))
        links.setdefault(b, []).append((eid, a))
    while frontier:
        nxt = []
        for c in frontier:
            for _eid, o in sorted(links.get(c, [])):
                if o not in order:
                    order[o] = len(order)
                    nxt.append(o)
        frontier = nxt

    next_eid = max(gplus.edges) + 1
    fam_records = []  # (poles, copies, regions, parent_comp, thick_eid)
    piece_of_edge: Dict[int, int] = {}
    edge_family: Dict[int, int] = {}
    region_parent: Dict[int, Tuple[int, int]] = {}  # region -> (parent comp, fam idx)

    for fi, ((u, v), eids) in enumerate(sorted(families.items())):
        parent = min((c for c in {s for e in eids for s in _copy_sides(gplus, comp_of, e)}),
                     key=lambda c: order[c])
        copies, regions = _order_family(gplus, comp_of, eids, parent)
        tid = next_eid
        next_eid += 1
        fam_records.append(((u, v), copies, regions, parent, tid))
        for i, r in enumerate(regions):
            region_parent[r] = (parent, fi)
        for i, eid in enumerate(copies[:-1]):
            piece_of_edge[eid] = regions[i]
            edge_family[eid] = fi
        piece_of_edge[copies[-1]] = regions[-1]
        edge_family[copies[-1]] = fi

    for eid in gplus.edges:
        if eid in cut:
            continue
        d = (eid, 0, True)
        ca = comp_of[gplus.face_of_dart[d]]
        cb = comp_of[gplus.face_of_dart[rev(d)]]
        assert ca == cb, "uncut edge flanks two regions"
        piece_of_edge[eid] = ca

    def owner_family(comp: int, target: int) -> int:
        fam = None
        while comp != target:
            comp, fam = region_parent[comp]
        assert fam is not None
        return fam

    # collect piece contents
    all_comps = sorted({comp_of[i] for i in range(len(gplus.faces))})
    piece_edges: Dict[int, Dict[int, EdgeRec]] = {c: {} for c in all_comps}
    dropped = {rec[1][-1] for rec in fam_records}
    for eid, comp in piece_of_edge.items():
        if eid in dropped:
            continue
        piece_edges[comp][eid] = gplus.edges[eid]
    for (u, v), copies, regions, parent, tid in fam_records:
        piece_edges[parent][tid] = EdgeRec(tid, u, v, THICK)

    thick_dart = {}
    for (u, v), copies, regions, parent, tid in fam_records:
        thick_dart[(tid, u)] = (tid, 0, True)
        thick_dart[(tid, v)] = (tid, 0, False)

    fam_by_idx = {fi: rec for fi, rec in enumerate(fam_records)}

    piece_rot: Dict[int, Dict] = {c: {} for c in all_comps}
    piece_vertices: Dict[int, set] = {c: set() for c in all_comps}
    for vid in sorted(gplus.vertices):
        darts = gplus.rot[("v", vid)]
        comps_here = set()
        for d in darts:
            eid = d[0]
            comp = piece_of_edge[eid]
            comps_here.add(comp)
            # copies also put the pole into the parent piece
            if eid in edge_family:
                comps_here.add(fam_by_idx[edge_family[eid]][3])
        for target in comps_here:
            filtered = []
            emitted = set()
            for d in darts:
                comp = piece_of_edge[d[0]]
                if comp == target:
                    if d[0] not in dropped:
                        filtered.append(d)
                    # a dropped copy contributes nothing to its own piece
                    continue
                # dart lives inside some family; if that family's thick edge
                # belongs to the target piece, it stands in for the block
                try:
                    fi_own = owner_family(comp, target)
                except KeyError:
                    continue  # on the outer side of the target piece
                tid = fam_records[fi_own][4]
                if fi_own not in emitted:
                    emitted.add(fi_own)
                    filtered.append(thick_dart[(tid, vid)])
            if filtered:
                piece_rot[target][("v", vid)] = filtered
                piece_vertices[target].add(vid)

    piece_crossings: Dict[int, Dict[int, Tuple[int, int]]] = {c: {} for c in all_comps}
    for cid, (e1, e2) in sorted(gplus.crossings.items()):
        comp = piece_of_edge[e1]
        assert piece_of_edge[e2] == comp, "crossing pair split between pieces"
        piece_crossings[comp][cid] = (e1, e2)
        piece_rot[comp][("x", cid)] = list(gplus.rot[("x", cid)])

    # outer anchors
    anchors: Dict[int, Dart] = {}
    root_anchor = gplus.outer_anchor if gplus.outer_anchor is not None \
        else gplus.faces[gplus.outer_face].darts[0]
    if root_anchor[0] in cut:
        cands = [d for d in gplus.faces[gplus.outer_face].darts if d[0] not in cut]
        assert cands, "outer walk entirely on parallel copies"
        root_anchor = cands[0]
    anchors[outer_comp] = root_anchor
    for (u, v), copies, regions, parent, tid in fam_records:
        for i, r in enumerate(regions):
            eid = copies[i]
            for d in ((eid, 0, True), (eid, 0, False)):
                if comp_of[gplus.face_of_dart[d]] != r:
                    anchors[r] = d
                    break

    built: Dict[int, Piece] = {}
    for comp in all_comps:
        pg = OnePlaneGraph(
            {vid: gplus.vertices[vid] for vid in sorted(piece_vertices[comp])},
            piece_edges[comp],
            piece_crossings[comp],
            piece_rot[comp],
            outer_anchor=anchors[comp],
            stage="piece")
        built[comp] = Piece(pg)

    for (u, v), copies, regions, parent, tid in fam_records:
        built[parent].bundles[tid] = Bundle(
            (u, v), tuple(copies), tuple(built[r] for r in regions),
            dropped=gplus.edges[copies[-1]])

    tree = DecompTree(built[outer_comp], gplus)
    if validate:
        _validate_tree(tree)
    return tree


def _validate_tree(tree: DecompTree) -> None:
    for piece in tree.pieces():
        g = piece.graph
        if not g.is_simple:
            raise AssertionFailure("piece is not simple")
        if not is_triangulated(g):
            raise AssertionFailure("piece is not triangulated")
        if not assert_three_connected(g):
            raise AssertionFailure("piece is not 3-connected")


# ---- expansion --------------------------------------------------------------


def _rotate_to_start(lst: List[Dart], first: Dart) -> List[Dart]:
    i = lst.index(first)
    return lst[i:] + lst[:i]


def _copy_first_at(child: Piece, copy_eid: int, pole: int) -> bool:
    """Whether the child's rotation arc at `pole` starts with its retained
    copy (the outer-face wedge sits just before the copy's dart)."""
    g = child.graph
    d = g.vertex_dart(copy_eid, pole)
    lst = g.rot[("v", pole)]
    i = lst.index(d)
    before = lst[(i - 1) % len(lst)]
    if g.face_of_dart[before] == g.outer_face:
        return True
    assert g.face_of_dart[d] == g.outer_face, \
        "copy dart not adjacent to the child's outer face"
    return False


def _expand_piece(piece: Piece):
    g = piece.graph
    vertices = dict(g.vertices)
    edges = {e: r for e, r in g.edges.items() if r.kind != THICK}
    crossings = dict(g.crossings)
    rot = {n: list(ds) for n, ds in g.rot.items()}

    for tid in sorted(piece.bundles):
        bundle = piece.bundles[tid]
        copies = bundle.copies
        k = len(copies)
        baked = [_expand_piece(c) for c in bundle.components]
        edges[copies[-1]] = bundle.dropped

        def copy_dart(eid: int, at: int) -> Dart:
            rec = bundle.dropped if eid == copies[-1] else \
                next(ce[eid] for (_cv, ce, _cc, _cr) in baked if eid in ce)
            return (eid, 0, rec.end_of(at) == 0)

        for pole in bundle.poles:
            first = _copy_first_at(bundle.components[0], copies[0], pole)
            block: List[Dart] = []
            if first:
                for i, (_cv, _ce, _cc, crot) in enumerate(baked):
                    block.extend(_rotate_to_start(crot[("v", pole)],
                                                  copy_dart(copies[i], pole)))
                block.append(copy_dart(copies[-1], pole))
            else:
                block.append(copy_dart(copies[-1], pole))
                for i in range(k - 2, -1, -1):
                    arc = _rotate_to_start(baked[i][3][("v", pole)],
                                           copy_dart(copies[i], pole))
                    block.extend(arc[1:] + arc[:1])
            rp = rot[("v", pole)]
            ip = rp.index((tid, 0, True) if g.edges[tid].u == pole
                          else (tid, 0, False))
            rot[("v", pole)] = rp[:ip] + block + rp[ip + 1:]

        for cv, ce, cc, crot in baked:
            vertices.update(cv)
            edges.update(ce)
            crossings.update(cc)
            for node, ds in crot.items():
                if node[0] == "v" and node[1] in bundle.poles:
                    continue
                rot[node] = ds

    return vertices, edges, crossings, rot


# ---- connectivity -----------------------------------------------------------


def _articulation_exists(adj: Dict[int, set], skip: Optional[int] = None) -> bool:
    verts = [v for v in adj if v != skip]
    if not verts:
        return False
    index = {}
    low = {}
    parent: Dict[int, Optional[int]] = {}
    counter = [0]
    root = verts[0]

    for start in verts:
        if start in index:
            continue
        if start != root:
            return True  # disconnected counts as failure for our callers
        stack = [(start, None, iter(sorted(adj[start] - {skip})))]
        index[start] = low[start] = counter[0]
        counter[0] += 1
        parent[start] = None
        root_children = 0
        while stack:
            v, par, it = stack[-1]
            advanced = False
            for w in it:
                if w == skip:
                    continue
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    parent[w] = v
                    if v == start:
                        root_children += 1
                    stack.append((w, v, iter(sorted(adj[w] - {skip}))))
                    advanced = True
                    break
                elif w != par:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                pv = stack[-1][0]
                low[pv] = min(low[pv], low[v])
                if pv != start and low[v] >= index[pv]:
                    return True
        if root_children > 1:
            return True
    return False


def assert_three_connected(g: OnePlaneGraph) -> bool:
    """No cut vertex and no separation pair (vertex-deletion test)."""
    adj = g.adjacency()
    n = len(adj)
    if n < 3:
        return False
    comps = g.component_nodes()
    if len(comps) != 1:
        return False
    if _articulation_exists(adj):
        return False
    for v in sorted(adj):
        if _articulation_exists(adj, skip=v):
            return False
    return True
