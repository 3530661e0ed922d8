"""Dynamics on trees derived from matchings.

Three constructions share this module: transferring a perfect matching of
the odd-path power G_n down to a 2-regular acyclic graph by ball majority,
cycle surgery turning the three functions read off a 4-copy doubling
matching into a 4-regular forest, and the staged construction of a free
two-generator action on such a forest.  Everything runs on finite windows,
so each construction carries its own notion of how deep a vertex must sit
for the answer there to be exact; shallower vertices are skipped and
counted, never silently guessed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import (
    BallTruncatedError,
    ExtensionStuckError,
    HypothesisFailedError,
    InvalidMatchingError,
    NotPerfectOnInteriorError,
    WindowTooSmallError,
)
from .graphs import BipartiteGraph, bipartite_graph, distances_from, validate_matching


class OrientedTwoRegular:
    """Window of a 2-regular acyclic graph with each component ordered.

    Components of such a window are simple paths.  Each is walked away from
    its least endpoint, so succ/pred realize the component linear order and
    pos gives the rank within the component.
    """

    __slots__ = ("graph", "succ", "pred", "pos", "comp")

    def __init__(self, graph, succ, pred, pos, comp):
        self.graph = graph
        self.succ = succ
        self.pred = pred
        self.pos = pos
        self.comp = comp

    @classmethod
    def from_graph(cls, g: BipartiteGraph) -> "OrientedTwoRegular":
        for v in g.ids:
            if g.degree(v) > 2:
                raise HypothesisFailedError(
                    "degree above 2 in a 2-regular window", vertex=v
                )
        succ: dict = {}
        pred: dict = {}
        pos: dict = {}
        comp: dict = {}
        seen: set = set()
        for start in g.ids:
            if start in seen:
                continue
            members = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for w in g.adj[u]:
                    if w not in members:
                        members.add(w)
                        stack.append(w)
            ends = sorted(v for v in members if g.degree(v) <= 1)
            if not ends:
                raise HypothesisFailedError(
                    "cycle inside a 2-regular window",
                    component=sorted(members)[:8],
                )
            root = ends[0]
            v, prev, k = root, None, 0
            while True:
                pos[v] = k
                comp[v] = root
                seen.add(v)
                step = [w for w in g.adj[v] if w != prev]
                if not step:
                    break
                succ[v] = step[0]
                pred[step[0]] = v
                prev, v = v, step[0]
                k += 1
        return cls(g, succ, pred, pos, comp)

    def component_members(self):
        out: dict = {}
        for v, root in self.comp.items():
            out.setdefault(root, []).append(v)
        return {root: sorted(vs, key=self.pos.get) for root, vs in out.items()}


def odd_path_graph(g, n: int) -> BipartiteGraph:
    """G_n: x joined to y when the unique path between them has odd length <= 2n-1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    tr = g if isinstance(g, OrientedTwoRegular) else OrientedTwoRegular.from_graph(g)
    base = tr.graph
    edges = []
    for seq in tr.component_members().values():
        for i, u in enumerate(seq):
            for d in range(1, 2 * n, 2):
                if i + d < len(seq):
                    edges.append((u, seq[i + d]))
    return bipartite_graph(base.side_vertices(0), base.side_vertices(1), edges)


def majority_ball(tr: OrientedTwoRegular, x, n: int) -> tuple:
    """D_n(x): the side-0 vertices within distance 2n-2 of x; always 2n-1 many."""
    if n < 1:
        raise ValueError("n must be >= 1")
    base = tr.graph
    base.require_vertex(x)
    if base.side_of[x] != 0:
        raise ValueError("majority ball is anchored at a side-0 vertex")
    dist = distances_from(base, x, bound=2 * n - 2)
    ball = sorted(v for v in dist if base.side_of[v] == 0)
    if len(ball) != 2 * n - 1:
        raise BallTruncatedError(
            "majority ball leaves the window", center=x, n=n, found=len(ball)
        )
    return tuple(ball)


@dataclass(frozen=True)
class TransferResult:
    n: int
    matching: dict  # side-0 vertex -> chosen neighbor in the base graph
    excluded: tuple  # side-0 vertices skipped as too shallow

    def directions(self, tr: OrientedTwoRegular) -> dict:
        """-1 where the choice went below x in the component order, else +1."""
        return {
            x: -1 if tr.pos[y] < tr.pos[x] else 1 for x, y in self.matching.items()
        }

    def as_obj(self) -> dict:
        return {
            "n": self.n,
            "matching": sorted([x, y] for x, y in self.matching.items()),
            "excluded": sorted(self.excluded),
        }


def transfer_matching(tr: OrientedTwoRegular, m_n, n: int) -> TransferResult:
    """Ball-majority transfer of a G_n matching down to the base graph.

    Each side-0 vertex whose majority ball lies inside the window and is fully
    matched picks the base-graph neighbor on the side of x holding at least n
    of the matched images; the component of that neighbor in the graph minus x
    is exactly one of the two half-lines, so counting positions decides it.
    """
    gn = odd_path_graph(tr, n)
    partner: dict = {}
    for u, v in validate_matching(gn, m_n):
        partner[u] = v
        partner[v] = u
    out: dict = {}
    taken: dict = {}
    excluded = []
    for x in tr.graph.side_vertices(0):
        try:
            ball = majority_ball(tr, x, n)
        except BallTruncatedError:
            excluded.append(x)
            continue
        if any(y not in partner for y in ball):
            excluded.append(x)
            continue
        below = sum(1 for y in ball if tr.pos[partner[y]] < tr.pos[x])
        y = tr.pred.get(x) if below >= n else tr.succ.get(x)
        assert y is not None, "complete ball but missing neighbor"
        if y in taken:
            raise InvalidMatchingError(
                "transfer demanded the same partner twice",
                vertex=y,
                left=sorted((taken[y], x)),
            )
        taken[y] = x
        out[x] = y
    return TransferResult(n=n, matching=out, excluded=tuple(excluded))


@dataclass(frozen=True)
class TripleFunctionSystem:
    """Three injective partial maps with disjoint ranges covering the interior."""

    maps: tuple  # three dicts, point index -> point index
    n_points: int
    interior: tuple  # bool per point
    labels: tuple | None = None

    def predecessors(self) -> dict:
        """point -> (map index, source); single-valued by range disjointness."""
        pred: dict = {}
        for i, f in enumerate(self.maps):
            for x, y in f.items():
                if y in pred:
                    raise HypothesisFailedError(
                        "ranges overlap", point=y, maps=[pred[y][0], i]
                    )
                pred[y] = (i, x)
        return pred

    def validate(self, require_interior_coverage: bool = True) -> dict:
        if len(self.maps) != 3:
            raise ValueError("exactly three maps expected")
        for i, f in enumerate(self.maps):
            for x, y in f.items():
                if not (0 <= x < self.n_points and 0 <= y < self.n_points):
                    raise HypothesisFailedError(
                        "map entry outside the window", index=i, entry=[x, y]
                    )
            if len(set(f.values())) != len(f):
                raise HypothesisFailedError("map not injective", index=i)
        pred = self.predecessors()
        if require_interior_coverage:
            for p in range(self.n_points):
                if self.interior[p] and p not in pred:
                    raise HypothesisFailedError(
                        "interior point missed by every range", point=p
                    )
        return pred


def triple_system_from_matching(dg, matching) -> TripleFunctionSystem:
    """Read the three functions off a 4-copy doubling matching.

    f_i(x) = y when (i+1, x) is matched to (0, y).  Perfect-on-interior makes
    every interior point carry all three values and lie in exactly one range.
    """
    if dg.copies != 4:
        raise ValueError("triple systems come from the 4-copy doubling graph")
    partner: dict = {}
    for u, v in matching:
        partner[u] = v
        partner[v] = u
    for vid in range(dg.n_vertices()):
        if dg.is_interior(vid) and vid not in partner:
            raise NotPerfectOnInteriorError(
                "matching misses an interior vertex",
                vid=vid,
                copy=dg.copy_of(vid),
            )
    maps: tuple = ({}, {}, {})
    for u, v in matching:
        if dg.side(u) == 0:
            u, v = v, u
        assert dg.side(u) == 1 and dg.side(v) == 0, "matching edge within one side"
        maps[dg.copy_of(u) - 1][dg.point_of(u)] = v
    n = dg.n_points
    ts = TripleFunctionSystem(
        maps=maps,
        n_points=n,
        interior=tuple(dg.window.is_interior(i) for i in range(n)),
        labels=tuple(dg.window.words),
    )
    ts.validate()
    return ts


@dataclass(frozen=True)
class ForestWindow:
    """Finite window of a 4-regular forest.

    present marks points that survived component resolution; depth is the
    BFS depth from each kept component's least point (-1 where dropped) and
    radius the maximum depth.  Interior flags are inherited from the source
    and cleared on dropped points.
    """

    adjacency: tuple  # tuple of sorted tuples per point
    interior: tuple
    present: tuple
    depth: tuple
    radius: int
    labels: tuple | None
    stats: dict

    def n_points(self) -> int:
        return len(self.adjacency)

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def is_interior(self, i: int) -> bool:
        return self.interior[i]

    def to_obj(self) -> dict:
        return {
            "n_points": self.n_points(),
            "edges": sorted(
                [u, v]
                for u in range(self.n_points())
                for v in self.adjacency[u]
                if u < v
            ),
            "interior": [int(b) for b in self.interior],
            "present": [int(b) for b in self.present],
            "depth": list(self.depth),
            "radius": self.radius,
            "labels": list(self.labels) if self.labels is not None else None,
            "stats": self.stats,
        }


def forest_from_obj(obj) -> ForestWindow:
    n = obj["n_points"]
    nbrs = [set() for _ in range(n)]
    for u, v in obj["edges"]:
        nbrs[u].add(v)
        nbrs[v].add(u)
    return ForestWindow(
        adjacency=tuple(tuple(sorted(s)) for s in nbrs),
        interior=tuple(bool(b) for b in obj["interior"]),
        present=tuple(bool(b) for b in obj["present"]),
        depth=tuple(obj["depth"]),
        radius=obj["radius"],
        labels=tuple(obj["labels"]) if obj.get("labels") is not None else None,
        stats=dict(obj.get("stats", {})),
    )


def _steal(edges: set, start, first, ray, g0):
    """Move each subtree hanging by a g0 edge one step down an injective ray.

    Adds {z, g0(z')} and removes {z', g0(z')} along consecutive ray points
    z' = ray step of z, starting from first.  Every add is paired with the
    removal that frees the same subtree, so trees stay trees; the walk stops
    where the window runs out of ray or of g0 values.
    """
    z, nxt = start, first
    while nxt is not None:
        tgt = g0.get(nxt)
        if tgt is None or tgt == z:
            break
        edges.discard(frozenset((nxt, tgt)))
        edges.add(frozenset((z, tgt)))
        z, nxt = nxt, ray.get(nxt)


def forest_from_paradox(ts: TripleFunctionSystem, w=None) -> ForestWindow:
    """Cycle surgery: the graph generated by a triple system, made acyclic.

    Every component of that graph is resolved by walking the unique
    predecessor chain from its least point: the chain either closes a cycle
    (a component fully inside the window) or dies at a point with no
    predecessor.  Dying at a non-interior point means the component's cycle
    lives outside the window, so the component is dropped and counted; an
    interior point with no predecessor marks a genuinely cycle-free
    component, kept as is.

    For a cycle, edges are relabeled pointwise so the cycle runs along the
    first map, the closing edge into the least cycle vertex is cut, and the
    degree deficit is pushed out along rays from the two cut endpoints, each
    step moving one hanging subtree a step closer.  Shifting along every ray
    off the cycle would overshoot (cycle vertices would end up with five
    edges and the cycle itself would survive); the two endpoint rays are
    exactly enough for 4-regularity away from the boundary.

    Interior coverage is not required here: a relaxed synthetic system may
    have a chain dying at an interior point, which certifies the component
    cycle-free.
    """
    pred = ts.validate(require_interior_coverage=False)
    n = ts.n_points
    edges: set = set()
    nbrs = [set() for _ in range(n)]
    for f in ts.maps:
        for x, y in f.items():
            if x != y:
                edges.add(frozenset((x, y)))
                nbrs[x].add(y)
                nbrs[y].add(x)

    comp_of = [-1] * n
    comps = []
    for p in range(n):
        if comp_of[p] != -1:
            continue
        members = [p]
        comp_of[p] = len(comps)
        queue = deque([p])
        while queue:
            u = queue.popleft()
            for y in nbrs[u]:
                if comp_of[y] == -1:
                    comp_of[y] = len(comps)
                    members.append(y)
                    queue.append(y)
        comps.append(sorted(members))

    kept = [True] * len(comps)
    cycle_hist: dict = {}
    truncated = 0
    isolated = 0
    free_components = 0
    for ci, members in enumerate(comps):
        start = members[0]
        if len(members) == 1 and not nbrs[start] and start not in pred:
            # bare boundary point the maps never touched
            kept[ci] = False
            isolated += 1
            continue
        chain = [start]
        index = {start: 0}
        cyc = None
        while True:
            p = pred.get(chain[-1])
            if p is None:
                if ts.interior[chain[-1]]:
                    free_components += 1
                else:
                    kept[ci] = False
                    truncated += 1
                break
            x = p[1]
            j = index.get(x)
            if j is not None:
                # chain walks backward, so reverse to get the forward cycle
                cyc = list(reversed(chain[j:]))
                break
            index[x] = len(chain)
            chain.append(x)
        if cyc is None:
            continue
        k = cyc.index(min(cyc))
        cyc = cyc[k:] + cyc[:k]
        cycle_hist[len(cyc)] = cycle_hist.get(len(cyc), 0) + 1

        succ_in_cycle = {cyc[t]: cyc[(t + 1) % len(cyc)] for t in range(len(cyc))}
        rot = {}
        for x, y in succ_in_cycle.items():
            for j in range(3):
                if ts.maps[j].get(x) == y:
                    rot[x] = j
                    break
            assert x in rot, "cycle edge not realized by any map"

        def g_at(x, offset):
            return ts.maps[(rot[x] + offset) % 3].get(x)

        if len(cyc) == 1:
            x0 = cyc[0]
            _steal(edges, x0, g_at(x0, 1), ts.maps[1], ts.maps[0])
            _steal(edges, x0, g_at(x0, 2), ts.maps[2], ts.maps[0])
        elif len(cyc) == 2:
            x0, x1 = cyc
            _steal(edges, x0, g_at(x0, 1), ts.maps[1], ts.maps[0])
            _steal(edges, x1, g_at(x1, 1), ts.maps[1], ts.maps[0])
        else:
            x0, xn = cyc[0], cyc[-1]
            edges.discard(frozenset((xn, x0)))
            _steal(edges, xn, g_at(xn, 1), ts.maps[1], ts.maps[0])
            _steal(edges, x0, g_at(x0, 1), ts.maps[1], ts.maps[0])

    present = [kept[comp_of[p]] for p in range(n)]
    final = [set() for _ in range(n)]
    for e in edges:
        u, v = sorted(e)
        if present[u] and present[v]:
            final[u].add(v)
            final[v].add(u)

    depth = [-1] * n
    for ci, members in enumerate(comps):
        if not kept[ci]:
            continue
        root = members[0]
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for y in final[u]:
                if depth[y] == -1:
                    depth[y] = depth[u] + 1
                    queue.append(y)
    radius = max((d for d in depth if d >= 0), default=0)

    labels = ts.labels
    if labels is None and w is not None:
        labels = tuple(w.words)
    return ForestWindow(
        adjacency=tuple(tuple(sorted(s)) for s in final),
        interior=tuple(
            bool(ts.interior[p]) and present[p] for p in range(n)
        ),
        present=tuple(present),
        depth=tuple(depth),
        radius=radius,
        labels=labels,
        stats={
            "components": len(comps),
            "kept": sum(kept),
            "truncated": truncated,
            "isolated": isolated,
            "cycle_free": free_components,
            "cycles": {str(k): v for k, v in sorted(cycle_hist.items())},
        },
    )


def forest_is_acyclic(fw: ForestWindow) -> bool:
    """Union-find over the edge list; False as soon as an edge closes a loop."""
    parent = list(range(fw.n_points()))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u in range(fw.n_points()):
        for v in fw.adjacency[u]:
            if u < v:
                ru, rv = find(u), find(v)
                if ru == rv:
                    return False
                parent[ru] = rv
    return True


SEPARATION_BASE = 16
EXTENSION_ORDER = (-2, -1, 1, 2)


@dataclass(frozen=True)
class PartialInjectionStage:
    n: int
    a_points: tuple
    domain: frozenset
    maps: dict  # index in {-2,-1,1,2} -> dict snapshot


@dataclass
class F2ActionResult:
    maps: dict  # index -> dict, final
    stages: list
    covered: frozenset
    eligible: int
    audits: list

    @property
    def f1(self) -> dict:
        return self.maps[1]

    @property
    def f2(self) -> dict:
        return self.maps[2]

    def coverage(self) -> float:
        return len(self.covered) / self.eligible if self.eligible else 0.0

    def as_obj(self) -> dict:
        return {
            "f1": sorted([x, y] for x, y in self.maps[1].items()),
            "f2": sorted([x, y] for x, y in self.maps[2].items()),
            "covered": len(self.covered),
            "eligible": self.eligible,
            "coverage": self.coverage(),
            "stages": [
                {
                    "n": st.n,
                    "layer": len(st.a_points),
                    "domain": len(st.domain),
                }
                for st in self.stages
            ],
            "audits": self.audits,
        }


def _bounded_ball(adjacency, source, bound):
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        d = dist[u] + 1
        if d > bound:
            continue
        for y in adjacency[u]:
            if y not in dist:
                dist[y] = d
                queue.append(y)
    return dist


def _multi_source_dist(adjacency, sources, bound):
    dist = {s: 0 for s in sources}
    queue = deque(sorted(sources))
    while queue:
        u = queue.popleft()
        d = dist[u] + 1
        if d > bound:
            continue
        for y in adjacency[u]:
            if y not in dist:
                dist[y] = d
                queue.append(y)
    return dist


def _greedy_net(adjacency, points, separation):
    """Ascending-index net: accepted points block everything within separation."""
    blocked: set = set()
    out = []
    for p in points:
        if p in blocked:
            continue
        out.append(p)
        blocked.update(_bounded_ball(adjacency, p, separation))
    return out


def _domain_components(adjacency, domain):
    comp = {}
    for s in sorted(domain):
        if s in comp:
            continue
        comp[s] = s
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for y in adjacency[u]:
                if y in domain and y not in comp:
                    comp[y] = s
                    queue.append(y)
    return comp


def _stage_audit(forest: ForestWindow, domain: set, stage: int) -> dict:
    """Measure the stage conditions: local connectivity and G^{<=8} diameters."""
    adjacency = forest.adjacency
    comp = _domain_components(adjacency, domain)
    for x in sorted(domain):
        ball = _bounded_ball(adjacency, x, 4)
        for y in ball:
            if y in domain and comp[y] != comp[x]:
                raise HypothesisFailedError(
                    "domain points within distance 4 in separate pieces",
                    stage=stage,
                    pair=[x, y],
                )
    # G^{<=8} restricted to the domain
    g8: dict = {x: set() for x in domain}
    for x in sorted(domain):
        ball = _bounded_ball(adjacency, x, 8)
        for y in ball:
            if y != x and y in domain:
                g8[x].add(y)
    seen: set = set()
    max_diam = 0
    for s in sorted(domain):
        if s in seen:
            continue
        members = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for y in g8[u]:
                if y not in seen:
                    seen.add(y)
                    members.append(y)
                    queue.append(y)
        diam = 0
        for a in members:
            dist = {a: 0}
            queue = deque([a])
            while queue:
                u = queue.popleft()
                for y in g8[u]:
                    if y not in dist:
                        dist[y] = dist[u] + 1
                        queue.append(y)
            diam = max(diam, max(dist.values()))
        max_diam = max(max_diam, diam)
    bound = 4**stage
    if max_diam > bound:
        raise HypothesisFailedError(
            "stage component diameter above bound",
            stage=stage,
            diameter=max_diam,
            bound=bound,
        )
    return {
        "stage": stage,
        "domain": len(domain),
        "g8_diameter": max_diam,
        "g8_bound": bound,
    }


def f2_action_from_forest(forest: ForestWindow, stages: int) -> F2ActionResult:
    """Stage the four partial injections over a 4-regular forest window.

    Layer n is a greedy net of degree-4 interior points with pairwise
    distance above 16 * 4^n; its points outside the current domain sprout
    shells that only grow through points within distance 3 of the previous
    domain.  At each new point, rule one forces any value whose inverse is
    already committed, then rule two fills the remaining indices with fresh
    distinct neighbors, scanning indices in the fixed order -2, -1, 1, 2
    and taking the least feasible neighbor.
    """
    if stages < 0:
        raise ValueError("stages must be >= 0")
    need = 2 * SEPARATION_BASE * 4**stages
    if forest.radius < need:
        raise WindowTooSmallError(
            "forest too shallow for the requested stages",
            radius=forest.radius,
            required=need,
            stages=stages,
        )
    n = forest.n_points()
    eligible = [
        p
        for p in range(n)
        if forest.present[p] and forest.interior[p] and forest.degree(p) == 4
    ]
    elig_set = set(eligible)
    adjacency = forest.adjacency

    maps = {i: {} for i in EXTENSION_ORDER}
    ran = {i: set() for i in EXTENSION_ORDER}
    domain: set = set()
    stages_out = []
    audits = []

    for s_n in range(stages + 1):
        separation = SEPARATION_BASE * 4**s_n
        layer = _greedy_net(adjacency, eligible, separation)
        newcomers = [p for p in layer if p not in domain]
        dist_prev = _multi_source_dist(adjacency, domain, bound=3)

        shells = [sorted(newcomers)]
        claimed = set(newcomers)
        owner = {p: p for p in newcomers}
        frontier = shells[0]
        while frontier:
            votes: dict = {}
            for u in frontier:
                for y in adjacency[u]:
                    if y in claimed or y in domain or y not in elig_set:
                        continue
                    if dist_prev.get(y, 9) > 3:
                        continue
                    votes.setdefault(y, set()).add(owner[u])
            ring = sorted(votes)
            for y in ring:
                if len(votes[y]) != 1:
                    raise HypothesisFailedError(
                        "shells of two layer points claim one vertex",
                        stage=s_n,
                        vertex=y,
                        owners=sorted(votes[y]),
                    )
                owner[y] = votes[y].pop()
                claimed.add(y)
            if not ring:
                break
            shells.append(ring)
            frontier = ring

        for ring in shells:
            for x in ring:
                values: dict = {}
                nbrs = adjacency[x]
                for i in EXTENSION_ORDER:
                    forced = [y for y in nbrs if maps[-i].get(y) == x]
                    if forced:
                        assert len(forced) == 1, "two neighbors force one index"
                        assert forced[0] not in ran[i], "forced value already used"
                        values[i] = forced[0]
                for i in EXTENSION_ORDER:
                    if i in values:
                        continue
                    got = None
                    for y in nbrs:
                        if y in values.values() or y in ran[i]:
                            continue
                        if maps[-i].get(y, x) != x:
                            continue
                        got = y
                        break
                    if got is None:
                        raise ExtensionStuckError(
                            "no feasible value during extension",
                            point=x,
                            index=i,
                            stage=s_n,
                            taken={str(j): v for j, v in values.items()},
                            neighbors=list(nbrs),
                            range_blocked=[y for y in nbrs if y in ran[i]],
                        )
                    values[i] = got
                for i, y in values.items():
                    maps[i][x] = y
                    ran[i].add(y)
                domain.add(x)

        assert all(p in domain for p in layer), "layer escaped the domain"
        stages_out.append(
            PartialInjectionStage(
                n=s_n,
                a_points=tuple(layer),
                domain=frozenset(domain),
                maps={i: dict(maps[i]) for i in EXTENSION_ORDER},
            )
        )
        audits.append(_stage_audit(forest, domain, s_n))

    return F2ActionResult(
        maps=maps,
        stages=stages_out,
        covered=frozenset(domain),
        eligible=len(eligible),
        audits=audits,
    )


def free_word_violation(maps: dict, max_len: int):
    """First (point, word) fixed by a nonempty reduced word, or None.

    Words run over the four indices with immediate inverses banned; an
    evaluation that leaves the domain abandons that branch, matching the
    window-mode reading of freeness.
    """
    domain = sorted(maps[1])
    for start in domain:
        stack = [(start, 0, ())]
        while stack:
            point, banned, word = stack.pop()
            for i in reversed(EXTENSION_ORDER):
                if i == -banned:
                    continue
                q = maps[i].get(point)
                if q is None:
                    continue
                w2 = word + (i,)
                if q == start:
                    return start, w2
                if len(w2) < max_len:
                    stack.append((q, i, w2))
    return None
