"""Group actions, finite windows of their orbit graphs, doubling graphs.

Group elements are reduced words everywhere; the sphere action interprets a
word through the exact rational rotations of rotations.py.  Since the
standard rotation pair is free, words double as canonical point labels in
both modes, and the artifact-wide point order is the shortlex word key.

A window is the ball of a chosen radius around a base point, with a margin
marking which points are interior (their generator images are complete
within the window).  Doubling graphs are kept lazy: vertex (copy, point) is
the integer copy * n_points + point_index, adjacency computed on demand,
because interesting windows are far too large to materialize edge lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    FixedBaseError,
    FreeActionViolationError,
    MarginTooSmallError,
    NotPerfectOnInteriorError,
    UnknownVertexError,
)
from .graphs import BipartiteGraph, bipartite_graph
from .hall import HallReport, HallWitness
from .matching import combine_saturating, hopcroft_karp
from .rotations import apply_to_point, is_unit_point, word_rotation
from .words import IDENTITY, inv, mul, reduce_word, word_key

F2 = "f2"
SPHERE = "sphere"


@dataclass(frozen=True)
class GeneratingSet:
    """Finite symmetric set of reduced words containing the identity.

    Element order is meaningful (piece indices refer to it); the constructor
    puts the identity first, keeps the supplied order otherwise, and appends
    any missing inverses at the end.
    """

    elements: tuple

    @staticmethod
    def from_words(words) -> "GeneratingSet":
        seen = []
        for w in words:
            r = reduce_word(w)
            if r not in seen:
                seen.append(r)
        if IDENTITY in seen:
            seen.remove(IDENTITY)
        out = [IDENTITY] + seen
        for w in list(out):
            if inv(w) not in out:
                out.append(inv(w))
        return GeneratingSet(tuple(out))

    def nonidentity(self) -> tuple:
        return tuple(w for w in self.elements if w)

    def max_word_length(self) -> int:
        return max((len(w) for w in self.elements), default=0)

    def index_of(self, w: str) -> int:
        return self.elements.index(w)

    def __len__(self):
        return len(self.elements)


def standard_generators() -> GeneratingSet:
    return GeneratingSet((IDENTITY, "a", "A", "b", "B"))


def square_set(s: GeneratingSet) -> GeneratingSet:
    """S^2 = all pairwise products, canonical shortlex order.

    Contains s (identity in s makes every element a product), symmetric,
    identity first because the empty word has the least key.
    """
    prods = {mul(u, v) for u in s.elements for v in s.elements}
    return GeneratingSet(tuple(sorted(prods, key=word_key)))


class ActionWindow:
    """Ball of the orbit graph around a base point, points in key order.

    words[i] is the canonical label of point i (for the sphere: the unique
    reduced word reaching it from the base, unique by freeness).  dist[i] is
    the graph distance to the base under the expanding generator set.
    """

    def __init__(self, kind, gens, radius, margin, words, dist, coords, base_index):
        self.kind = kind
        self.gens = gens
        self.radius = radius
        self.margin = margin
        self.words = words
        self.dist = dist
        self.coords = coords
        self.base_index = base_index
        self._word_index = {w: i for i, w in enumerate(words)}
        self._coord_index = (
            {c: i for i, c in enumerate(coords)} if coords is not None else None
        )
        self._rot_cache: dict = {}
        self._nbr_cache: dict = {}

    def n_points(self) -> int:
        return len(self.words)

    def point_key(self, i: int) -> str:
        return self.words[i]

    def index_of_word(self, w: str):
        return self._word_index.get(w)

    def dist_to_base(self, i: int) -> int:
        return self.dist[i]

    def is_interior(self, i: int) -> bool:
        return self.dist[i] <= self.radius - self.margin

    def interior_indices(self):
        bound = self.radius - self.margin
        return [i for i in range(len(self.words)) if self.dist[i] <= bound]

    def deep_interior_indices(self, extra: int):
        bound = self.radius - self.margin - extra
        return [i for i in range(len(self.words)) if self.dist[i] <= bound]

    def _rotation(self, w: str):
        rot = self._rot_cache.get(w)
        if rot is None:
            rot = self._rot_cache[w] = word_rotation(w)
        return rot

    def apply(self, gamma: str, i: int):
        """Index of gamma . point_i, or None when it leaves the window."""
        if self.kind == F2:
            return self._word_index.get(mul(gamma, self.words[i]))
        target = apply_to_point(self._rotation(gamma), self.coords[i])
        return self._coord_index.get(target)

    def neighbors(self, i: int):
        """Orbit-graph neighbors inside the window (nonidentity generators)."""
        got = self._nbr_cache.get(i)
        if got is None:
            out = set()
            for gamma in self.gens.nonidentity():
                j = self.apply(gamma, i)
                if j is not None:
                    out.add(j)
            got = self._nbr_cache[i] = sorted(out)
        return got


def expand_window(kind, base, s: GeneratingSet, radius: int, margin: int) -> ActionWindow:
    """Breadth-first ball of the action graph of s around base.

    For the sphere, dedupe is by exact coordinates and every rediscovery
    cross-checks the word label: two distinct reduced words landing on the
    same point would contradict freeness of the orbit and raise.
    """
    if radius <= margin:
        raise ValueError(f"radius {radius} must exceed margin {margin}")
    if margin < 0:
        raise ValueError("margin must be >= 0")
    moves = s.nonidentity()
    if kind == F2:
        base_word = reduce_word(base if base is not None else IDENTITY)
        labels = {base_word: 0}
        dist_by_label = {base_word: 0}
        frontier = [base_word]
        d = 0
        while frontier and d < radius:
            d += 1
            nxt = []
            for w in frontier:
                for gamma in moves:
                    t = mul(gamma, w)
                    if t not in dist_by_label:
                        dist_by_label[t] = d
                        nxt.append(t)
            frontier = nxt
        order = sorted(dist_by_label, key=word_key)
        words = tuple(order)
        dist = tuple(dist_by_label[w] for w in order)
        base_index = order.index(base_word)
        return ActionWindow(F2, s, radius, margin, words, dist, None, base_index)

    if kind != SPHERE:
        raise ValueError(f"unknown window kind {kind!r}")
    if base is None:
        from .rotations import BASE_POINT

        base = BASE_POINT
    if not is_unit_point(base):
        raise ValueError(f"base {base} is not a unit vector")
    rots = {gamma: word_rotation(gamma) for gamma in moves}
    for gamma in moves:
        if apply_to_point(rots[gamma], base) == base:
            raise FixedBaseError(
                f"generator {gamma!r} fixes the base point", generator=gamma
            )
    label_of = {base: IDENTITY}
    dist_of = {base: 0}
    frontier = [base]
    d = 0
    while frontier and d < radius:
        d += 1
        nxt = []
        for p in frontier:
            w = label_of[p]
            for gamma in moves:
                t = apply_to_point(rots[gamma], p)
                lab = mul(gamma, w)
                if t in label_of:
                    if label_of[t] != lab and len(lab) <= len(label_of[t]):
                        raise FreeActionViolationError(
                            "two reduced words reach one point",
                            point=list(t),
                            word_a=label_of[t],
                            word_b=lab,
                        )
                else:
                    label_of[t] = lab
                    dist_of[t] = d
                    nxt.append(t)
        frontier = nxt
    pts = sorted(label_of, key=lambda p: word_key(label_of[p]))
    words = tuple(label_of[p] for p in pts)
    if len(set(words)) != len(words):
        raise FreeActionViolationError("duplicate word labels in window")
    dist = tuple(dist_of[p] for p in pts)
    base_index = pts.index(base)
    return ActionWindow(SPHERE, s, radius, margin, words, dist, tuple(pts), base_index)


class DoublingGraph:
    """Lazy doubling graph on {0..copies-1} x window points.

    Vertex id = copy * n_points + point-index.  (0, x) is adjacent to (c, y)
    for c >= 1 exactly when some element of s carries x to y; the identity in
    s gives every (0, x) all its vertical edges (c, x).
    """

    def __init__(self, window: ActionWindow, s: GeneratingSet, copies: int):
        if copies not in (3, 4):
            raise ValueError("copies must be 3 or 4")
        self.window = window
        self.s = s
        self.copies = copies
        self.n_points = window.n_points()
        self._im: dict = {}
        self._im2: dict = {}

    def n_vertices(self) -> int:
        return self.copies * self.n_points

    def copy_of(self, vid: int) -> int:
        return vid // self.n_points

    def point_of(self, vid: int) -> int:
        return vid % self.n_points

    def side(self, vid: int) -> int:
        return 0 if vid < self.n_points else 1

    def vid(self, copy: int, i: int) -> int:
        return copy * self.n_points + i

    def is_interior(self, vid: int) -> bool:
        return self.window.is_interior(self.point_of(vid))

    def images(self, i: int):
        """Point indices hit from i by elements of s (identity included)."""
        got = self._im.get(i)
        if got is None:
            out = set()
            for gamma in self.s.elements:
                j = self.window.apply(gamma, i)
                if j is not None:
                    out.add(j)
            got = self._im[i] = sorted(out)
        return got

    def neighbors(self, vid: int):
        n = self.n_points
        i = vid % n
        if vid < n:
            return [c * n + j for c in range(1, self.copies) for j in self.images(i)]
        return self.images(i)

    def g2_point_neighbors(self, i: int):
        """Points j whose s-images intersect i's (i itself included)."""
        got = self._im2.get(i)
        if got is None:
            out = set()
            for j in self.images(i):
                out.update(self.images(j))
            got = self._im2[i] = sorted(out)
        return got

    def g2_neighbors(self, vid: int):
        """Vertices at distance exactly 2: same side, intersecting images."""
        n = self.n_points
        i = vid % n
        pts = self.g2_point_neighbors(i)
        if vid < n:
            return [j for j in pts if j != i]
        return [
            c * n + j
            for c in range(1, self.copies)
            for j in pts
            if c * n + j != vid
        ]

    def to_bipartite(self) -> BipartiteGraph:
        n = self.n_points
        side0 = range(n)
        side1 = [c * n + i for c in range(1, self.copies) for i in range(n)]
        edges = []
        for i in range(n):
            for j in self.images(i):
                for c in range(1, self.copies):
                    edges.append((i, c * n + j))
        return bipartite_graph(side0, side1, edges)


def build_doubling(window: ActionWindow, s: GeneratingSet, copies: int) -> DoublingGraph:
    return DoublingGraph(window, s, copies)


def interior_expansion_audit(
    dg: DoublingGraph, s2: GeneratingSet, sample_cap: int, size_cap: int
) -> HallReport:
    """Check the doubled expansion on interior connected sets, up to caps.

    Side-1 sets need |N(F)| >= 2|F|; copy-0 sets only |N(F)| >= |F| (that
    direction is the trivial one).  Sets are G^2-connected, all-interior,
    grown in the canonical least-root order.  |N(F)| only grows under
    extension, so a branch whose neighborhood already meets the requirement
    at the size cap certifies all its extensions and is pruned; the verdict
    stays exhaustive.  sample_cap bounds the sets actually inspected, and
    the stats say whether the walk finished inside the budget.
    """
    if dg.copies != 3:
        raise ValueError("expansion audit is defined on the 3-copy graph")
    need = 2 * s2.max_word_length()
    if dg.window.margin < need:
        raise MarginTooSmallError(
            f"window margin {dg.window.margin} below 2*maxlen(S^2) = {need}",
            margin=dg.window.margin,
            required=need,
        )
    n = dg.n_points
    interior_pts = [i for i in range(n) if dg.window.is_interior(i)]
    interior_set = set(interior_pts)

    def nb_side0(vid):
        return [j for j in dg.g2_point_neighbors(vid) if j != vid and j in interior_set]

    g2_cache: dict = {}

    def nb_side1(vid):
        got = g2_cache.get(vid)
        if got is None:
            i = vid % n
            pts = [j for j in dg.g2_point_neighbors(i) if j in interior_set]
            got = g2_cache[vid] = [
                c * n + j for c in range(1, 3) for j in pts if c * n + j != vid
            ]
            got.sort()
        return got

    stats = {}
    plans = [
        (0, interior_pts, nb_side0, 1),
        (1, sorted(c * n + i for c in (1, 2) for i in interior_pts), nb_side1, 2),
    ]
    for side, roots, nb, mult in plans:
        target = mult * size_cap
        checked = 0
        pruned = 0
        exhausted = True
        witness = None

        def grow(root, s_set, ext, banned, nbr):
            # mirrors the finite checker's discipline: ext holds candidate
            # extensions above root, banned the ones already branched over
            nonlocal checked, pruned, witness, exhausted
            for i, v in enumerate(ext):
                if checked >= sample_cap:
                    exhausted = False
                    return False
                f2_set = s_set | {v}
                nbr2 = nbr | set(dg.neighbors(v))
                checked += 1
                if len(nbr2) < mult * len(f2_set):
                    witness = HallWitness(
                        side=side,
                        f_set=tuple(sorted(f2_set)),
                        required=Fraction(mult * len(f2_set)),
                        actual=len(nbr2),
                    )
                    return False
                if len(nbr2) >= target:
                    pruned += 1
                    continue
                if len(f2_set) < size_cap:
                    blocked = banned | set(ext) | f2_set
                    new = [w for w in nb(v) if w > root and w not in blocked]
                    if not grow(
                        root,
                        f2_set,
                        ext[i + 1 :] + new,
                        banned | frozenset(ext[: i + 1]),
                        nbr2,
                    ):
                        return False
            return True

        for root in roots:
            if checked >= sample_cap:
                exhausted = False
                break
            nbr = set(dg.neighbors(root))
            checked += 1
            if len(nbr) < mult:
                witness = HallWitness(
                    side=side,
                    f_set=(root,),
                    required=Fraction(mult),
                    actual=len(nbr),
                )
                break
            if len(nbr) >= target:
                pruned += 1
                continue
            if size_cap > 1:
                ext = [w for w in nb(root) if w > root]
                if not grow(root, {root}, ext, frozenset(), nbr):
                    break
        if witness is not None:
            return HallReport(satisfied=False, witness=witness)
        stats[f"checked_side{side}"] = checked
        stats[f"pruned_side{side}"] = pruned
        stats[f"exhausted_side{side}"] = exhausted
    return HallReport(satisfied=True, stats=stats)


def interior_saturating_matching(dg: DoublingGraph) -> set:
    """Matching of the doubling graph covering every interior vertex.

    No finite window admits a perfect matching (sides are 1 to copies-1), so
    the contract is saturation of the interior of both sides.  Two runs of
    Hopcroft-Karp, one per side's interior, are merged by the alternating
    component rule; boundary vertices may stay unmatched and that is the
    expected outcome, reported by the caller, never an error here.
    """
    n = dg.n_points
    interior_pts = [i for i in range(n) if dg.window.is_interior(i)]
    left_a = list(interior_pts)  # interior copy-0 vids
    pair_a = hopcroft_karp(left_a, dg.neighbors)
    missing = [v for v in left_a if v not in pair_a]
    if missing:
        raise NotPerfectOnInteriorError(
            "interior copy-0 vertices left unmatched",
            count=len(missing),
            sample=missing[:5],
        )
    left_b = sorted(c * n + i for c in range(1, dg.copies) for i in interior_pts)
    pair_b = hopcroft_karp(left_b, dg.neighbors)
    missing = [v for v in left_b if v not in pair_b]
    if missing:
        raise NotPerfectOnInteriorError(
            "interior side-1 vertices left unmatched",
            count=len(missing),
            sample=missing[:5],
        )
    m1 = {(u, v) for u, v in pair_a.items()}
    m2 = {(v, u) for u, v in pair_b.items()}  # orient as (copy0, side1)
    return combine_saturating(m1, m2, set(left_a), set(left_b))


def unmatched_boundary_stats(dg: DoublingGraph, matching) -> dict:
    """Counts and depth range of unmatched vertices; they must be boundary."""
    covered = set()
    for u, v in matching:
        covered.add(u)
        covered.add(v)
    unmatched = [vid for vid in range(dg.n_vertices()) if vid not in covered]
    interior_unmatched = [vid for vid in unmatched if dg.is_interior(vid)]
    dists = [dg.window.dist_to_base(dg.point_of(vid)) for vid in unmatched]
    return {
        "unmatched": len(unmatched),
        "unmatched_interior": len(interior_unmatched),
        "min_depth": min(dists) if dists else None,
        "radius": dg.window.radius,
        "margin": dg.window.margin,
    }
