"""Paradoxical decompositions from doubling-graph matchings, and back.

A perfect-on-interior matching of the 3-copy doubling graph names, for each
interior point x, one partner (c, gamma . x); copy 1 partners put x into an
A-piece and copy 2 partners into a B-piece, indexed by the least generator
realizing the partner.  The A-pieces translate to cover every point exactly
once, and so do the B-pieces: that pair of facts is what the verifier checks
on the deep interior, where finite truncation cannot interfere.
"""

from __future__ import annotations

from dataclasses import dataclass

from .actions import ActionWindow, DoublingGraph, GeneratingSet, standard_generators
from .errors import NotPerfectOnInteriorError
from .graphs import BipartiteGraph, bipartite_graph
from .words import IDENTITY


@dataclass(frozen=True)
class ParadoxicalDecomposition:
    gens: GeneratingSet
    pieces_a: dict  # point index -> generator index
    pieces_b: dict

    def piece_sizes(self) -> dict:
        out_a: dict = {}
        out_b: dict = {}
        for idx in self.pieces_a.values():
            out_a[idx] = out_a.get(idx, 0) + 1
        for idx in self.pieces_b.values():
            out_b[idx] = out_b.get(idx, 0) + 1
        return {"a": out_a, "b": out_b}

    def as_obj(self, window: ActionWindow) -> dict:
        return {
            "gens": list(self.gens.elements),
            "pieces_a": sorted(
                [window.point_key(i), t] for i, t in self.pieces_a.items()
            ),
            "pieces_b": sorted(
                [window.point_key(i), t] for i, t in self.pieces_b.items()
            ),
        }


def pieces_from_obj(obj, window: ActionWindow) -> ParadoxicalDecomposition:
    gens = GeneratingSet.from_words(obj["gens"])
    pieces_a = {}
    pieces_b = {}
    for key, target in (("pieces_a", pieces_a), ("pieces_b", pieces_b)):
        for word, idx in obj[key]:
            i = window.index_of_word(word)
            if i is None:
                continue  # points outside this window cannot be checked
            target[i] = idx
    return ParadoxicalDecomposition(gens=gens, pieces_a=pieces_a, pieces_b=pieces_b)


@dataclass(frozen=True)
class Certificate:
    status: str  # PASS or FAIL
    deep_interior: int
    violation: dict | None = None
    warnings: tuple = ()
    stats: dict | None = None

    def as_obj(self) -> dict:
        return {
            "status": self.status,
            "deep_interior": self.deep_interior,
            "violation": self.violation,
            "warnings": list(self.warnings),
            "stats": self.stats,
        }


def matching_to_paradox(dg: DoublingGraph, matching) -> ParadoxicalDecomposition:
    """Piece assignment from a matching, least generator index breaking ties.

    Requires every interior vertex of all copies to be matched; boundary
    vertices may be unmatched.
    """
    if dg.copies != 3:
        raise ValueError("piece extraction needs the 3-copy doubling graph")
    partner = {}
    for u, v in matching:
        partner[u] = v
        partner[v] = u
    n = dg.n_points
    for vid in range(dg.n_vertices()):
        if dg.is_interior(vid) and vid not in partner:
            raise NotPerfectOnInteriorError(
                "matching misses an interior vertex",
                vid=vid,
                copy=dg.copy_of(vid),
                point=dg.window.point_key(vid % n),
            )
    w = dg.window
    pieces_a: dict = {}
    pieces_b: dict = {}
    for i in range(n):
        if not w.is_interior(i):
            continue
        p = partner[i]
        c, j = dg.copy_of(p), dg.point_of(p)
        t = None
        for idx, gamma in enumerate(dg.s.elements):
            if w.apply(gamma, i) == j:
                t = idx
                break
        assert t is not None, "matched pair not realized by any generator"
        if c == 1:
            pieces_a[i] = t
        else:
            pieces_b[i] = t
    return ParadoxicalDecomposition(gens=dg.s, pieces_a=pieces_a, pieces_b=pieces_b)


def paradox_to_matching(pd: ParadoxicalDecomposition, dg: DoublingGraph) -> set:
    """Reverse identification: pieces back to doubling-graph edges."""
    w = dg.window
    n = dg.n_points
    out = set()
    used = set()
    for pieces, copy in ((pd.pieces_a, 1), (pd.pieces_b, 2)):
        for i, t in sorted(pieces.items()):
            j = w.apply(pd.gens.elements[t], i)
            if j is None:
                continue
            u, v = i, copy * n + j
            assert u not in used and v not in used, "piece tables overlap"
            used.add(u)
            used.add(v)
            out.add((u, v))
    return out


def verify_paradox(pd: ParadoxicalDecomposition, w: ActionWindow) -> Certificate:
    """Certificate over the deep interior (points whose gens-ball is interior).

    Checks, in canonical point order, that deep points are assigned exactly
    one piece, and that each deep point is hit by exactly one A-translate and
    exactly one B-translate of interior assigned points.  Returns the first
    violation; an empty deep interior is a vacuous PASS with a warning.
    """
    reach = pd.gens.max_word_length()
    deep = w.deep_interior_indices(reach)
    warnings = []
    if not deep:
        warnings.append("empty deep interior; certificate is vacuous")

    both = sorted(set(pd.pieces_a) & set(pd.pieces_b))
    if both:
        i = both[0]
        return Certificate(
            status="FAIL",
            deep_interior=len(deep),
            violation={
                "kind": "point_in_both_tables",
                "point": w.point_key(i),
            },
            warnings=tuple(warnings),
        )

    a_hits: dict = {}
    b_hits: dict = {}
    for pieces, hits in ((pd.pieces_a, a_hits), (pd.pieces_b, b_hits)):
        for i, t in pieces.items():
            if not w.is_interior(i):
                continue
            j = w.apply(pd.gens.elements[t], i)
            if j is not None:
                hits.setdefault(j, []).append(i)

    assigned = set(pd.pieces_a) | set(pd.pieces_b)
    for z in deep:
        if z not in assigned:
            return Certificate(
                status="FAIL",
                deep_interior=len(deep),
                violation={"kind": "deep_point_unassigned", "point": w.point_key(z)},
                warnings=tuple(warnings),
            )
        for label, hits in (("a", a_hits), ("b", b_hits)):
            got = hits.get(z, [])
            if len(got) != 1:
                return Certificate(
                    status="FAIL",
                    deep_interior=len(deep),
                    violation={
                        "kind": f"coverage_{label}",
                        "point": w.point_key(z),
                        "preimages": sorted(w.point_key(i) for i in got),
                    },
                    warnings=tuple(warnings),
                )
    return Certificate(
        status="PASS",
        deep_interior=len(deep),
        violation=None,
        warnings=tuple(warnings),
        stats=pd.piece_sizes(),
    )


def classical_f2_decomposition(w: ActionWindow) -> ParadoxicalDecomposition:
    """The textbook four-piece decomposition, as a known-answer oracle.

    Pieces by leading letter, with the powers of the inverse generator
    (identity included) absorbed into the piece translated by the identity:
    points starting with 'a' or lying in P = {A^k} translate by e; the rest
    of W(A) translates by a; W(b) by e; W(B) by b.
    """
    if w.words[w.base_index] != IDENTITY:
        raise ValueError("classical decomposition needs an identity-based window")
    gens = standard_generators()
    pieces_a: dict = {}
    pieces_b: dict = {}
    for i, word in enumerate(w.words):
        if not word or word == "A" * len(word):
            pieces_a[i] = 0  # P, absorbed
        elif word[0] == "a":
            pieces_a[i] = 0
        elif word[0] == "A":
            pieces_a[i] = 1
        elif word[0] == "b":
            pieces_b[i] = 0
        else:
            pieces_b[i] = 3
    return ParadoxicalDecomposition(gens=gens, pieces_a=pieces_a, pieces_b=pieces_b)


@dataclass(frozen=True)
class EquidecompositionGraph:
    graph: BipartiteGraph
    window: ActionWindow
    s: GeneratingSet
    a_set: tuple
    b_set: tuple


def build_equidecomposition_graph(
    w: ActionWindow, s: GeneratingSet, a_set, b_set
) -> EquidecompositionGraph:
    """Bipartite graph on {0} x A union {1} x B, edges where s carries A to B.

    Vertex ids: a point i in A keeps id i, a point j in B gets n_points + j,
    matching the doubling-graph id convention.
    """
    n = w.n_points()
    a_ids = sorted(set(a_set))
    b_ids = sorted(set(b_set))
    b_lookup = set(b_ids)
    edges = []
    for i in a_ids:
        seen = set()
        for gamma in s.elements:
            j = w.apply(gamma, i)
            if j is not None and j in b_lookup and j not in seen:
                seen.add(j)
                edges.append((i, n + j))
    g = bipartite_graph(a_ids, [n + j for j in b_ids], edges)
    return EquidecompositionGraph(
        graph=g, window=w, s=s, a_set=tuple(a_ids), b_set=tuple(b_ids)
    )
