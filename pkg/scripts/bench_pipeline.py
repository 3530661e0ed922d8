#!/usr/bin/env python3
"""Time the window -> matching -> paradox -> forest -> action pipeline.

Useful for picking radii: costs are dominated by window size, which for the
free group grows like 3^radius.
"""

import argparse
import random
import time

from paradecomp.actions import (
    build_doubling,
    expand_window,
    interior_saturating_matching,
    square_set,
    standard_generators,
)
from paradecomp.generators import synthetic_forest
from paradecomp.paradox import matching_to_paradox, verify_paradox
from paradecomp.treedyn import (
    f2_action_from_forest,
    forest_from_paradox,
    free_word_violation,
    triple_system_from_matching,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kind", choices=["f2", "sphere"], default="f2")
    ap.add_argument("--radius", type=int, default=8)
    ap.add_argument("--margin", type=int, default=4)
    ap.add_argument("--stages", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    s = standard_generators()
    base = "" if args.kind == "f2" else (0, 1, 0, 0)
    marks = [("start", time.monotonic())]

    def mark(label):
        marks.append((label, time.monotonic()))

    w = expand_window(args.kind, base, s, args.radius, args.margin)
    mark(f"window ({len(w.words)} points)")

    s2 = square_set(s)
    dg = build_doubling(w, s2, 4)
    matching = interior_saturating_matching(dg)
    mark(f"doubled matching ({len(matching)} edges)")

    dg3 = build_doubling(w, s, 3)
    m3 = interior_saturating_matching(dg3)
    pd = matching_to_paradox(dg3, m3)
    cert = verify_paradox(pd, w)
    mark(f"paradox + verify ({cert.status})")

    ts = triple_system_from_matching(dg, matching)
    fw = forest_from_paradox(ts, w)
    mark(f"forest ({fw.stats['kept']} components kept)")

    # the paradox-derived window is shallow, so the action bench runs on a
    # synthetic forest deep enough for the requested stage ladder
    deep = synthetic_forest(random.Random(args.seed))
    res = f2_action_from_forest(deep, args.stages)
    vio = free_word_violation(res.maps, 6)
    mark(f"action on synthetic forest ({len(res.covered)} covered, violation={vio})")

    total = marks[-1][1] - marks[0][1]
    for (label, t), (_, prev) in zip(marks[1:], marks[:-1]):
        print(f"{t - prev:8.3f}s  {label}")
    print(f"{total:8.3f}s  total")


if __name__ == "__main__":
    main()
