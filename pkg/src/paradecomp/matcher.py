"""Layered perfect matching: the staged construction.

The driver keeps a perfect matching of the current residual at all times.
Removing a vertex pair (x, y) preserves Hall's condition on the residual
exactly when the rest still has a perfect matching, so each candidate edge is
tested with one alternating-path search against the maintained matching
instead of a fresh matching computation.  Candidates are scanned in ascending
id order, which realizes the "least such edge" rule.

Hall's condition throughout this module means perfect matchability: balanced
sides and zero deficiency from both.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    BudgetExhaustedError,
    HallViolatedError,
    HypothesisFailedError,
)
from .graphs import BipartiteGraph, induced_subgraph
from .hall import ExpansionParams, HallReport, check_hall, check_hall_eps_n
from .layers import LayerSchedule, Layering, greedy_layering, validate_layering


@dataclass(frozen=True)
class StageState:
    n: int
    matching: frozenset
    residual: BipartiteGraph
    epsilon_n: Fraction
    picked: tuple = ()  # (layer_vertex, partner) pairs chosen this stage


@dataclass(frozen=True)
class StageRecord:
    n: int
    epsilon_n: Fraction
    matched: tuple  # (layer_vertex, partner) in pick order

    def as_obj(self) -> dict:
        return {
            "n": self.n,
            "epsilon_n": str(self.epsilon_n),
            "matched": [[x, y] for x, y in self.matched],
        }


@dataclass(frozen=True)
class MatchResult:
    matching: frozenset
    stages: tuple
    layering: Layering

    def as_obj(self) -> dict:
        return {
            "matching": sorted([min(e), max(e)] for e in self.matching),
            "stages": [s.as_obj() for s in self.stages],
            "layering": self.layering.as_obj(),
        }


class _Engine:
    """Perfect matching of the residual, updated incrementally."""

    def __init__(self, g: BipartiteGraph):
        from .matching import hopcroft_karp

        self.g = g
        self.alive = set(g.ids)
        pair_l = hopcroft_karp(g.side_vertices(0), lambda u: g.adj[u])
        self.pair = {}
        for u, v in pair_l.items():
            self.pair[u] = v
            self.pair[v] = u
        self.perfect = len(self.pair) == len(g.ids)

    def candidates(self, x):
        return [y for y in self.g.adj[x] if y in self.alive]

    def _alt_path(self, w, z, x, y):
        """Alternating path from w to the free-to-be vertex z, avoiding x, y.

        w and x share a side; steps are edge-to-partner hops against the
        current matching.  Returns the parent map or None.
        """
        g, pair, alive = self.g, self.pair, self.alive
        parent = {}
        frontier = [w]
        seen = {w, x}
        while frontier:
            nxt = []
            for u in frontier:
                for v in g.adj[u]:
                    if v == y or v not in alive or v in parent:
                        continue
                    parent[v] = u
                    if v == z:
                        return parent
                    m = pair[v]
                    if m not in seen:
                        seen.add(m)
                        nxt.append(m)
            frontier = nxt
        return None

    def remove_preserving(self, x, y) -> bool:
        """Commit removal of x and y if the rest stays perfectly matchable."""
        pair = self.pair
        if pair[x] == y:
            del pair[x]
            del pair[y]
        else:
            w, z = pair[y], pair[x]
            parent = self._alt_path(w, z, x, y)
            if parent is None:
                return False
            del pair[x]
            del pair[y]
            v = z
            while True:
                u = parent[v]
                old = pair.get(u)
                pair[u] = v
                pair[v] = u
                if old == y:
                    break
                v = old
        self.alive.discard(x)
        self.alive.discard(y)
        return True

    def select(self, x):
        """Least partner whose removal with x preserves perfect matchability."""
        for y in self.candidates(x):
            if self.remove_preserving(x, y):
                return y
        raise HallViolatedError(
            f"no Hall-preserving edge at vertex {x}", vertex=x
        )


def select_hall_preserving_edge(residual: BipartiteGraph, x):
    """The least edge {x, y} whose removal keeps the residual matchable.

    Raises HALL_VIOLATED when the residual is not perfectly matchable to
    begin with (then no choice can be justified).
    """
    residual.require_vertex(x)
    engine = _Engine(residual)
    if not engine.perfect:
        raise HallViolatedError(
            "residual fails Hall's condition (no perfect matching)",
            vertices=len(residual.ids),
        )
    y = engine.select(x)
    return (x, y)


def initial_stage_state(g: BipartiteGraph, schedule: LayerSchedule) -> StageState:
    return StageState(
        n=-1, matching=frozenset(), residual=g, epsilon_n=schedule.epsilon_budget
    )


def run_stage(
    prev: StageState, layer, schedule: LayerSchedule, check_cap=None
) -> StageState:
    """One stage: match every still-present layer vertex, id order.

    check_cap, when given, re-verifies the incoming stage invariant
    Hall_{epsilon_prev, f(prev.n)} on the residual up to that cap before
    doing anything (opt-in; exponential in the cap).
    """
    n = prev.n + 1
    eps_n = schedule.epsilon_after(n)
    if eps_n <= 0:
        raise BudgetExhaustedError(
            f"epsilon_{n} = {eps_n} not positive", stage=n, epsilon=str(eps_n)
        )
    if check_cap is not None:
        floor = schedule.f(prev.n) if prev.n >= 0 else 1
        report = _hall_eps_capped(prev.residual, prev.epsilon_n, floor, check_cap)
        if not report.satisfied:
            raise HypothesisFailedError(
                "residual fails the incoming stage invariant",
                stage=n,
                witness=report.witness.as_obj() if report.witness else None,
            )
    fn = schedule.f(n)
    members = sorted(layer)
    for v in members:
        prev.residual.require_vertex(v)
    _check_separation(prev.residual, members, fn, n)

    engine = _Engine(prev.residual)
    if not engine.perfect:
        raise HallViolatedError("stage residual lost perfect matchability", stage=n)
    picked = []
    for x in members:
        if x not in engine.alive:
            continue
        y = engine.select(x)
        picked.append((x, y))
    matching = set(prev.matching)
    for x, y in picked:
        matching.add((min(x, y), max(x, y)))
    residual = induced_subgraph(prev.residual, engine.alive)
    return StageState(
        n=n,
        matching=frozenset(matching),
        residual=residual,
        epsilon_n=eps_n,
        picked=tuple(picked),
    )


def _check_separation(g: BipartiteGraph, members, fn: int, n: int) -> None:
    from .graphs import distances_from

    mset = set(members)
    for v in members:
        dist = distances_from(g, v, bound=fn)
        for w, d in dist.items():
            if w != v and w in mset:
                raise HypothesisFailedError(
                    f"layer {n} members {v}, {w} at distance {d} <= f({n}) = {fn}",
                    layer=n,
                    pair=[v, w],
                )


def _hall_eps_capped(g, epsilon, floor, cap) -> HallReport:
    # an empty enumeration range [floor, cap] leaves only plain Hall to check
    if cap < floor:
        return check_hall(g)
    return check_hall_eps_n(g, ExpansionParams(epsilon, floor), cap)


def layered_perfect_matching(
    g: BipartiteGraph,
    p: ExpansionParams,
    schedule: LayerSchedule,
    cap: int = 8,
    audit: bool = False,
    layering=None,
    audit_cap=None,
) -> MatchResult:
    """Perfect matching via the staged Hall-preserving construction.

    Precondition Hall_{epsilon, size_floor} is verified up to `cap` before
    starting (HYPOTHESIS_FAILED with the witness otherwise).  audit=True
    re-verifies the stage invariant on the residual after every stage, with
    the enumeration clause active only when the audit cap reaches f(n).
    audit_cap defaults to cap; it exists because the two checks scale
    differently: the precheck's floor is p.size_floor (usually 1), so any
    cap at or past the largest component size is unsatisfiable on finite
    graphs, while the stage audit floors at f(n) and tolerates a large cap.
    """
    if p.epsilon != schedule.epsilon_budget:
        raise ValueError(
            f"params epsilon {p.epsilon} != schedule budget {schedule.epsilon_budget}"
        )
    # Hall check first: unbalanced sides always fail the exact both-sided
    # check, and this way the caller gets a deficient-set witness instead of
    # a bare cardinality complaint.
    report = check_hall_eps_n(g, p, cap)
    if not report.satisfied:
        raise HypothesisFailedError(
            "graph fails the Hall_(eps,n) hypothesis up to the cap",
            cap=cap,
            witness=report.witness.as_obj() if report.witness else None,
        )
    n0 = len(g.side_vertices(0))
    n1 = len(g.side_vertices(1))
    if n0 != n1:
        raise HypothesisFailedError(
            f"sides have {n0} and {n1} vertices; no perfect matching can exist",
            side0=n0,
            side1=n1,
        )

    if layering is None:
        layering = greedy_layering(g, schedule)
    else:
        if not isinstance(layering, Layering):
            raw = [tuple(sorted(layer)) for layer in layering]
            layering = Layering(
                tuple(raw), tuple(schedule.f(i) for i in range(len(raw))), schedule
            )
        validate_layering(g, layering.layers, schedule)

    engine = _Engine(g)
    if not engine.perfect:
        raise HallViolatedError(
            "no perfect matching found despite Hall precheck", vertices=len(g.ids)
        )
    stages = []
    for n, layer in enumerate(layering.layers):
        eps_n = schedule.epsilon_after(n)
        if eps_n <= 0:
            raise BudgetExhaustedError(
                f"epsilon_{n} = {eps_n} not positive", stage=n, epsilon=str(eps_n)
            )
        picked = []
        for x in sorted(layer):
            if x not in engine.alive:
                continue
            y = engine.select(x)
            picked.append((x, y))
        if audit:
            residual = induced_subgraph(g, engine.alive)
            acap = cap if audit_cap is None else audit_cap
            rep = _hall_eps_capped(residual, eps_n, schedule.f(n), acap)
            if not rep.satisfied:
                raise HallViolatedError(
                    "stage invariant Hall_(eps_n, f(n)) failed",
                    stage=n,
                    epsilon_n=str(eps_n),
                    f_n=schedule.f(n),
                    witness=rep.witness.as_obj() if rep.witness else None,
                )
        stages.append(StageRecord(n=n, epsilon_n=eps_n, matched=tuple(picked)))

    if engine.alive:
        raise HypothesisFailedError(
            "layering did not cover the vertex set; vertices left unmatched",
            remaining=sorted(engine.alive)[:20],
        )
    matching = frozenset(
        (min(x, y), max(x, y)) for rec in stages for x, y in rec.matched
    )
    assert 2 * len(matching) == len(g.ids), "stage picks did not pair everything"
    return MatchResult(matching=matching, stages=tuple(stages), layering=layering)
