"""Maximum bipartite matching and matching-combination utilities.

Hopcroft-Karp over a callable neighbor oracle, so the same engine serves
materialized graphs and lazily expanded doubling graphs.  Deterministic:
left vertices are processed in the order given and neighbor lists are used
in the order returned, so callers fix the tie-breaks by sorting.
"""

from __future__ import annotations

from collections import deque


def hopcroft_karp(left_ids, neighbors) -> dict:
    """Maximum matching; returns {left_id: right_id}.

    left_ids: iterable of left-side vertices (order fixes determinism).
    neighbors: callable left_id -> iterable of right-side vertices.
    """
    left = list(left_ids)
    adj = {u: list(neighbors(u)) for u in left}
    pair_l: dict = {}
    pair_r: dict = {}
    INF = float("inf")
    dist: dict = {}

    def bfs() -> bool:
        q = deque()
        for u in left:
            if u not in pair_l:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = pair_r.get(v)
                if w is None:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u) -> bool:
        for v in adj[u]:
            w = pair_r.get(v)
            if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                pair_l[u] = v
                pair_r[v] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in left:
            if u not in pair_l:
                dfs(u)
    return pair_l


def max_matching(g) -> set:
    """Maximum matching of a BipartiteGraph as a set of (u, v) pairs, u < v.

    Left side is side 0; ascending id order everywhere, so the result is
    canonical for a given graph.
    """
    left = g.side_vertices(0)
    pair_l = hopcroft_karp(left, lambda u: g.adj[u])
    return {(min(u, v), max(u, v)) for u, v in pair_l.items()}


def matching_covers(matching, vertices) -> bool:
    covered = set()
    for u, v in matching:
        covered.add(u)
        covered.add(v)
    return all(v in covered for v in vertices)


def combine_saturating(m1, m2, need_a, need_b) -> set:
    """Merge two matchings into one covering need_a union need_b.

    m1 must cover need_a (vertices on one side), m2 must cover need_b (on
    the other side).  Classic alternating-component argument: over each
    component of the symmetric difference take m1's edges when the component
    holds a need_a vertex that m2 misses, otherwise m2's; shared edges are
    kept as-is.  Sides being distinct makes the two critical endpoint kinds
    collide in no component (parity), asserted at the end.
    """
    s1 = {(min(u, v), max(u, v)) for u, v in m1}
    s2 = {(min(u, v), max(u, v)) for u, v in m2}
    shared = s1 & s2
    d1 = s1 - shared
    d2 = s2 - shared

    partner1 = {}
    for u, v in d1:
        partner1[u] = v
        partner1[v] = u
    partner2 = {}
    for u, v in d2:
        partner2[u] = v
        partner2[v] = u

    covered2 = set()
    for u, v in s2:
        covered2.add(u)
        covered2.add(v)

    out = set(shared)
    seen = set()
    need_a = set(need_a)
    need_b = set(need_b)
    for start in sorted(partner1.keys() | partner2.keys()):
        if start in seen:
            continue
        comp = set()
        stack = [start]
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            for p in (partner1.get(x), partner2.get(x)):
                if p is not None and p not in comp:
                    stack.append(p)
        seen |= comp
        take_first = any(x in need_a and x not in covered2 for x in comp)
        chosen = d1 if take_first else d2
        for x in comp:
            p = partner1.get(x) if take_first else partner2.get(x)
            if p is not None:
                out.add((min(x, p), max(x, p)))

    covered = set()
    for u, v in out:
        assert u not in covered and v not in covered, "combination not a matching"
        covered.add(u)
        covered.add(v)
    missing = (need_a | need_b) - covered
    assert not missing, f"combination dropped required vertices: {sorted(missing)[:5]}"
    return out
