"""Finite bipartite graphs and the distance machinery everything else shares.

Vertex ids are opaque integers; every algorithm in the package breaks ties by
ascending id, so the structures here keep adjacency lists sorted.  Graphs are
immutable after construction: operations return new graphs.
"""

from __future__ import annotations

import math
from collections import deque

from .errors import (
    GraphFormatError,
    InvalidMatchingError,
    MixedSidesError,
    UnknownVertexError,
)

INFINITY = math.inf


class BipartiteGraph:
    """Vertices with side labels 0/1, edges only across sides.

    adj maps every vertex to a sorted tuple of neighbors; ids is the sorted
    vertex tuple.  Construct through bipartite_graph() which validates.
    """

    __slots__ = ("ids", "side_of", "adj")

    def __init__(self, ids, side_of, adj):
        self.ids = ids
        self.side_of = side_of
        self.adj = adj

    def n_vertices(self) -> int:
        return len(self.ids)

    def side_vertices(self, side: int) -> tuple:
        return tuple(v for v in self.ids if self.side_of[v] == side)

    def degree(self, v) -> int:
        return len(self.adj[v])

    def edges(self):
        """Each edge once, as (min, max), ascending."""
        out = []
        for u in self.ids:
            for v in self.adj[u]:
                if u < v:
                    out.append((u, v))
        return out

    def n_edges(self) -> int:
        return sum(len(a) for a in self.adj.values()) // 2

    def has_vertex(self, v) -> bool:
        return v in self.side_of

    def require_vertex(self, v):
        if v not in self.side_of:
            raise UnknownVertexError(f"vertex {v!r} not in graph", vertex=v)

    def __repr__(self):
        return f"BipartiteGraph(|V|={len(self.ids)}, |E|={self.n_edges()})"


def bipartite_graph(side0, side1, edges) -> BipartiteGraph:
    side_of = {}
    for v in side0:
        if v in side_of:
            raise GraphFormatError(f"duplicate vertex id {v}", vertex=v)
        side_of[v] = 0
    for v in side1:
        if v in side_of:
            raise GraphFormatError(f"duplicate vertex id {v}", vertex=v)
        side_of[v] = 1
    nbrs = {v: set() for v in side_of}
    for e in edges:
        u, v = e
        if u not in side_of:
            raise UnknownVertexError(f"edge endpoint {u!r} not a vertex", vertex=u)
        if v not in side_of:
            raise UnknownVertexError(f"edge endpoint {v!r} not a vertex", vertex=v)
        if u == v:
            raise GraphFormatError(f"self-loop at {u}", vertex=u)
        if side_of[u] == side_of[v]:
            raise GraphFormatError(
                f"edge {u}-{v} joins two side-{side_of[u]} vertices", edge=[u, v]
            )
        nbrs[u].add(v)
        nbrs[v].add(u)
    ids = tuple(sorted(side_of))
    adj = {v: tuple(sorted(nbrs[v])) for v in ids}
    return BipartiteGraph(ids, side_of, adj)


def graph_from_obj(obj) -> BipartiteGraph:
    """Parse the interchange dict, naming the offending field on bad input."""
    if not isinstance(obj, dict):
        raise GraphFormatError("top level must be an object")
    if "vertices" not in obj:
        raise GraphFormatError("missing field: vertices")
    if "edges" not in obj:
        raise GraphFormatError("missing field: edges")
    verts = obj["vertices"]
    if not isinstance(verts, list):
        raise GraphFormatError("vertices: expected a list")
    side0, side1 = [], []
    for i, entry in enumerate(verts):
        where = f"vertices[{i}]"
        if not isinstance(entry, dict):
            raise GraphFormatError(f"{where}: expected an object")
        if "id" not in entry or "side" not in entry:
            raise GraphFormatError(f"{where}: needs id and side")
        vid, side = entry["id"], entry["side"]
        if not isinstance(vid, int) or isinstance(vid, bool):
            raise GraphFormatError(f"{where}.id: expected an integer")
        if side not in (0, 1):
            raise GraphFormatError(f"{where}.side: expected 0 or 1")
        (side0 if side == 0 else side1).append(vid)
    edges = obj["edges"]
    if not isinstance(edges, list):
        raise GraphFormatError("edges: expected a list")
    pairs = []
    for i, e in enumerate(edges):
        where = f"edges[{i}]"
        if not isinstance(e, list) or len(e) != 2:
            raise GraphFormatError(f"{where}: expected a pair [u, v]")
        u, v = e
        if not isinstance(u, int) or not isinstance(v, int):
            raise GraphFormatError(f"{where}: endpoints must be integers")
        pairs.append((u, v))
    return bipartite_graph(side0, side1, pairs)


def graph_to_obj(g: BipartiteGraph) -> dict:
    return {
        "vertices": [{"id": v, "side": g.side_of[v]} for v in g.ids],
        "edges": [[u, v] for u, v in g.edges()],
    }


def to_dot(g: BipartiteGraph, matching=None) -> str:
    matched = set()
    if matching:
        for u, v in matching:
            matched.add((min(u, v), max(u, v)))
    lines = ["graph g {"]
    for v in g.ids:
        shape = "box" if g.side_of[v] == 0 else "ellipse"
        lines.append(f'  "{v}" [shape={shape}];')
    for u, v in g.edges():
        style = " [style=bold]" if (u, v) in matched else ""
        lines.append(f'  "{u}" -- "{v}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def distances_from(g: BipartiteGraph, source, bound=None) -> dict:
    """BFS distances; omits vertices beyond bound (or other components)."""
    g.require_vertex(source)
    dist = {source: 0}
    q = deque([source])
    while q:
        u = q.popleft()
        d = dist[u] + 1
        if bound is not None and d > bound:
            continue
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = d
                q.append(w)
    return dist


def distance(g: BipartiteGraph, x, y, bound=None):
    g.require_vertex(x)
    g.require_vertex(y)
    if x == y:
        return 0
    dist = {x: 0}
    q = deque([x])
    while q:
        u = q.popleft()
        d = dist[u] + 1
        if bound is not None and d > bound:
            return INFINITY
        for w in g.adj[u]:
            if w == y:
                return d
            if w not in dist:
                dist[w] = d
                q.append(w)
    return INFINITY


def neighborhood(g: BipartiteGraph, f_set) -> set:
    """N_G(F): neighbors of F that are not themselves in F."""
    fs = set(f_set)
    for v in fs:
        g.require_vertex(v)
    out = set()
    for v in fs:
        out.update(g.adj[v])
    return out - fs


def validate_matching(g: BipartiteGraph, matching):
    """Normalize a matching to a set of (min, max) pairs, or raise."""
    seen = set()
    norm = set()
    for e in matching:
        u, v = e
        g.require_vertex(u)
        g.require_vertex(v)
        if v not in g.adj[u]:
            raise InvalidMatchingError(f"{u}-{v} is not an edge", edge=[u, v])
        if u in seen or v in seen:
            raise InvalidMatchingError(
                f"matching not vertex-disjoint at {u}-{v}", edge=[u, v]
            )
        seen.add(u)
        seen.add(v)
        norm.add((min(u, v), max(u, v)))
    return norm


def induced_subgraph(g: BipartiteGraph, keep) -> BipartiteGraph:
    ks = set(keep)
    for v in ks:
        g.require_vertex(v)
    ids = tuple(v for v in g.ids if v in ks)
    side_of = {v: g.side_of[v] for v in ids}
    adj = {v: tuple(w for w in g.adj[v] if w in ks) for v in ids}
    return BipartiteGraph(ids, side_of, adj)


def remove_matched(g: BipartiteGraph, matching) -> BipartiteGraph:
    norm = validate_matching(g, matching)
    drop = set()
    for u, v in norm:
        drop.add(u)
        drop.add(v)
    return induced_subgraph(g, (v for v in g.ids if v not in drop))


def g2_neighbors(g: BipartiteGraph, v) -> set:
    """Vertices at distance exactly 2 from v in g.

    In a bipartite graph these are the same-side vertices reachable through
    one common neighbor, so no explicit distance filter is needed.
    """
    g.require_vertex(v)
    out = set()
    for u in g.adj[v]:
        out.update(g.adj[u])
    out.discard(v)
    return out


def g2_connected_components(g: BipartiteGraph, subset):
    """Partition a single-sided set into its G^2-connectivity classes.

    Adjacency is distance exactly 2 in the full graph, not in the induced
    subgraph, so two subset members may be joined through a vertex outside
    the subset.
    """
    sub = set(subset)
    if not sub:
        return []
    for v in sub:
        g.require_vertex(v)
    sides = {g.side_of[v] for v in sub}
    if len(sides) > 1:
        raise MixedSidesError("subset must lie in a single side", subset=sorted(sub))
    remaining = set(sub)
    comps = []
    for start in sorted(sub):
        if start not in remaining:
            continue
        comp = {start}
        remaining.discard(start)
        q = deque([start])
        while q:
            u = q.popleft()
            for w in g2_neighbors(g, u):
                if w in remaining:
                    remaining.discard(w)
                    comp.add(w)
                    q.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


LEQ = "LEQ"
EXACT = "EXACT"
ODD_PATHS = "ODD_PATHS"


class PowerGraphSpec:
    """Lazy view of G^{<=n}, G^n, or the odd-path graph G_n.

    Adjacency is answered per query; nothing is stored densely.  For
    ODD_PATHS the rule is a simple G-path of odd length <= 2n-1, found by a
    bounded DFS (the bound keeps this cheap; real uses have n <= 3).
    """

    def __init__(self, base: BipartiteGraph, mode: str, n: int):
        if mode not in (LEQ, EXACT, ODD_PATHS):
            raise GraphFormatError(f"unknown power graph mode {mode!r}")
        if n < 1:
            raise GraphFormatError("power graph order must be >= 1", n=n)
        self.base = base
        self.mode = mode
        self.n = n

    def neighbors(self, v) -> set:
        g = self.base
        g.require_vertex(v)
        if self.mode == LEQ:
            dist = distances_from(g, v, bound=self.n)
            return {w for w, d in dist.items() if 1 <= d <= self.n}
        if self.mode == EXACT:
            dist = distances_from(g, v, bound=self.n)
            return {w for w, d in dist.items() if d == self.n}
        return self._odd_path_ends(v)

    def adjacent(self, u, v) -> bool:
        if u == v:
            return False
        return v in self.neighbors(u)

    def _odd_path_ends(self, v) -> set:
        limit = 2 * self.n - 1
        g = self.base
        out = set()
        path = [v]
        on_path = {v}

        def walk(u, length):
            if length & 1:
                out.add(u)
            if length == limit:
                return
            for w in g.adj[u]:
                if w not in on_path:
                    on_path.add(w)
                    path.append(w)
                    walk(w, length + 1)
                    path.pop()
                    on_path.discard(w)

        walk(v, 0)
        out.discard(v)
        return out
