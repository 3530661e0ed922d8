#!/usr/bin/env python3
"""Emit small sample graph files for kicking the tires of the CLI."""

import argparse
import json
import random
from fractions import Fraction
from pathlib import Path

from paradecomp.generators import (
    complete_bipartite,
    hall_family,
    line_window,
    star_graph,
    union_of_permutations,
)
from paradecomp.graphs import graph_to_obj


def dump(path: Path, g) -> None:
    path.write_text(json.dumps(graph_to_obj(g), indent=2, sort_keys=True) + "\n")
    print(f"wrote {path} ({len(g.ids)} vertices)")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="sample_graphs")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)

    dump(out / "k33.json", complete_bipartite(3, 3))
    dump(out / "star.json", star_graph(3))
    dump(out / "path16.json", line_window(16))
    dump(out / "perms.json", union_of_permutations(12, 3, rng))
    for i, (g, p) in enumerate(
        hall_family(3, rng, [Fraction(1, 2)], n_range=(8, 24))
    ):
        dump(out / f"hall_{i}_eps_{p.epsilon.numerator}_{p.epsilon.denominator}.json", g)


if __name__ == "__main__":
    main()
