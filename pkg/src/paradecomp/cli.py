"""Command line entry point.

One JSON object per invocation on stdout, canonical encoding (sorted keys,
no whitespace), a top-level "schema" field naming the payload.  Exit codes:
0 ok, 1 usage or malformed input, 2 hypothesis/precondition failures on
well-formed input, 3 broken internal invariants.  No environment variables;
everything is a flag.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .actions import (
    F2,
    SPHERE,
    build_doubling,
    expand_window,
    interior_saturating_matching,
    square_set,
    standard_generators,
    unmatched_boundary_stats,
)
from .errors import ParadecompError
from .graphs import graph_from_obj, graph_to_obj, to_dot
from .hall import ExpansionParams, check_hall, check_hall_eps_n
from .layers import explicit_schedule, geometric_schedule, greedy_layering
from .matcher import layered_perfect_matching
from .paradox import (
    classical_f2_decomposition,
    matching_to_paradox,
    paradox_to_matching,
    pieces_from_obj,
    verify_paradox,
)
from .treedyn import (
    OrientedTwoRegular,
    f2_action_from_forest,
    forest_from_obj,
    forest_from_paradox,
    free_word_violation,
    transfer_matching,
    triple_system_from_matching,
)


class _InputError(ParadecompError):
    code = "BAD_INPUT"
    exit_status = 1


def _schema(name: str) -> str:
    return f"paradecomp/{name}/1"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(obj) -> None:
    sys.stdout.write(canonical_json(obj))


def _read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise _InputError(f"cannot read {path}: {e.strerror}", path=path)
    except json.JSONDecodeError as e:
        raise _InputError(f"not valid JSON: {path}", path=path, detail=str(e))


def _write_json(path: str, obj) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(obj))
    except OSError as e:
        raise _InputError(f"cannot write {path}: {e.strerror}", path=path)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract here says 1
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _schedule_from_args(args):
    if getattr(args, "schedule", None):
        try:
            f_list = [int(t) for t in args.schedule.split(",")]
        except ValueError:
            raise _InputError(f"bad schedule list: {args.schedule!r}")
        return explicit_schedule(f_list, args.epsilon)
    return geometric_schedule(args.epsilon, args.ratio)


def _parse_base(kind: str, raw):
    if raw is None:
        return "" if kind == F2 else None
    if kind == F2:
        return raw
    parts = raw.split(",")
    try:
        nums = [int(t) for t in parts]
    except ValueError:
        raise _InputError(f"bad base point: {raw!r}")
    if len(nums) == 3:
        nums.append(0)
    if len(nums) != 4:
        raise _InputError("base must be x,y,z or x,y,z,k")
    return tuple(nums)


def _window_meta(w) -> dict:
    base = w.words[w.base_index] if w.kind == F2 else list(w.coords[w.base_index])
    return {
        "kind": w.kind,
        "radius": w.radius,
        "margin": w.margin,
        "base": base,
    }


def _sidecar_path(out: str) -> str:
    if out.endswith(".json"):
        return out[: -len(".json")] + ".points.json"
    return out + ".points.json"


def cmd_hall_check(args):
    g = graph_from_obj(_read_json(args.graph))
    if args.epsilon is not None:
        p = ExpansionParams(args.epsilon, args.floor)
        report = check_hall_eps_n(g, p, args.cap)
    else:
        report = check_hall(g)
    payload = {
        "schema": _schema("hall-check"),
        "epsilon": str(args.epsilon) if args.epsilon is not None else None,
        "floor": args.floor,
        "cap": args.cap,
        "satisfied": report.satisfied,
        "report": report.as_obj(),
    }
    return payload, 0 if report.satisfied else 2


def cmd_layers(args):
    g = graph_from_obj(_read_json(args.graph))
    schedule = _schedule_from_args(args)
    lay = greedy_layering(g, schedule)
    payload = {
        "schema": _schema("layers"),
        "epsilon": str(args.epsilon),
        "layering": lay.as_obj(),
    }
    return payload, 0


def cmd_match(args):
    g = graph_from_obj(_read_json(args.graph))
    p = ExpansionParams(args.epsilon, args.floor)
    schedule = _schedule_from_args(args)
    res = layered_perfect_matching(
        g, p, schedule, cap=args.cap, audit=args.audit
    )
    if args.dot:
        try:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(to_dot(g, res.matching))
        except OSError as e:
            raise _InputError(f"cannot write {args.dot}: {e.strerror}")
    payload = {
        "schema": _schema("match"),
        "epsilon": str(args.epsilon),
        "floor": args.floor,
        "cap": args.cap,
        "audit": args.audit,
        "result": res.as_obj(),
        "dot": args.dot,
    }
    return payload, 0


def cmd_window(args):
    s = standard_generators()
    if args.square:
        s = square_set(s)
    w = expand_window(
        args.kind, _parse_base(args.kind, args.base), s, args.radius, args.margin
    )
    dg = build_doubling(w, s, args.copies)
    g = dg.to_bipartite()
    _write_json(args.out, {"schema": _schema("graph"), **graph_to_obj(g)})
    points_out = _sidecar_path(args.out)
    _write_json(
        points_out,
        {
            "schema": _schema("points"),
            "kind": w.kind,
            "radius": w.radius,
            "margin": w.margin,
            "copies": args.copies,
            "gens": list(s.elements),
            "base_index": w.base_index,
            "words": list(w.words),
            "coords": [list(p) for p in w.coords] if w.coords else None,
        },
    )
    payload = {
        "schema": _schema("window"),
        "window": _window_meta(w),
        "square": args.square,
        "copies": args.copies,
        "n_points": w.n_points(),
        "n_vertices": dg.n_vertices(),
        "n_edges": g.n_edges(),
        "interior_points": len(w.interior_indices()),
        "out": args.out,
        "points_out": points_out,
    }
    return payload, 0


def cmd_paradox(args):
    s = standard_generators()
    w = expand_window(
        args.kind, _parse_base(args.kind, args.base), s, args.radius, args.margin
    )
    boundary = None
    if args.oracle == "classical":
        pd = classical_f2_decomposition(w)
    else:
        dg = build_doubling(w, s, 3)
        matching = interior_saturating_matching(dg)
        pd = matching_to_paradox(dg, matching)
        boundary = unmatched_boundary_stats(dg, matching)
    cert = verify_paradox(pd, w)
    payload = {
        "schema": _schema("paradox"),
        "oracle": args.oracle,
        "window": _window_meta(w),
        "pieces": pd.as_obj(w),
        "certificate": cert.as_obj(),
        "boundary": boundary,
    }
    if args.out:
        _write_json(args.out, payload)
    return payload, 0 if cert.status == "PASS" else 3


def cmd_verify(args):
    obj = _read_json(args.pieces)
    meta = obj.get("window") if isinstance(obj, dict) else None
    kind = args.kind
    radius = args.radius
    margin = args.margin
    base = args.base
    if isinstance(meta, dict):
        # window geometry defaults from the pieces file so a paradox output
        # can be re-checked without repeating the flags
        kind = kind if kind is not None else meta.get("kind")
        radius = radius if radius is not None else meta.get("radius")
        margin = margin if margin is not None else meta.get("margin", 4)
        if base is None and meta.get("base") is not None:
            b = meta["base"]
            base = b if isinstance(b, str) else ",".join(str(c) for c in b)
    if kind is None or radius is None:
        raise _InputError("need --kind and --radius (file has no window metadata)")
    if margin is None:
        margin = 4
    s = standard_generators()
    w = expand_window(kind, _parse_base(kind, base), s, radius, margin)
    # accept either bare piece tables or a whole paradox output
    pobj = obj["pieces"] if isinstance(obj, dict) and "gens" not in obj else obj
    pd = pieces_from_obj(pobj, w)
    cert = verify_paradox(pd, w)
    payload = {
        "schema": _schema("verify"),
        "pieces": args.pieces,
        "window": _window_meta(w),
        "certificate": cert.as_obj(),
    }
    return payload, 0 if cert.status == "PASS" else 2


def cmd_transfer(args):
    g = graph_from_obj(_read_json(args.graph))
    mobj = _read_json(args.gn_matching)
    raw = mobj.get("matching") if isinstance(mobj, dict) else mobj
    if not isinstance(raw, list):
        raise _InputError("matching file needs a top-level list or a 'matching' field")
    pairs = []
    for e in raw:
        if not isinstance(e, list) or len(e) != 2:
            raise _InputError(f"bad matching entry: {e!r}")
        pairs.append((e[0], e[1]))
    tr = OrientedTwoRegular.from_graph(g)
    res = transfer_matching(tr, pairs, args.n)
    payload = {
        "schema": _schema("transfer"),
        "n": args.n,
        "matching": sorted([x, y] for x, y in res.matching.items()),
        "excluded": sorted(res.excluded),
        "directions": sorted([x, d] for x, d in res.directions(tr).items()),
    }
    return payload, 0


def cmd_forest(args):
    src = _read_json(args.src)
    meta = src.get("window")
    if not isinstance(meta, dict):
        raise _InputError("input lacks the 'window' metadata object")
    try:
        kind = meta["kind"]
        radius = meta["radius"]
        margin = meta["margin"]
        base = meta["base"]
    except KeyError as e:
        raise _InputError(f"window metadata missing {e.args[0]!r}")
    if kind == SPHERE and isinstance(base, list):
        base = tuple(base)
    # same window as the paradox run; only the translation set is squared
    # (expanding the window itself over S^2 would double the word radius)
    s = standard_generators()
    w = expand_window(kind, base, s, radius, margin)
    dg = build_doubling(w, square_set(s), 4)
    matching = interior_saturating_matching(dg)
    ts = triple_system_from_matching(dg, matching)
    fw = forest_from_paradox(ts, w)
    forest_obj = {"schema": _schema("forest-window"), **fw.to_obj()}
    if args.out:
        _write_json(args.out, forest_obj)
    payload = {
        "schema": _schema("forest"),
        "window": _window_meta(w),
        "n_points": fw.n_points(),
        "kept_points": sum(1 for b in fw.present if b),
        "radius": fw.radius,
        "stats": fw.stats,
        "out": args.out,
        "forest": None if args.out else forest_obj,
    }
    return payload, 0


def cmd_f2action(args):
    fw = forest_from_obj(_read_json(args.src))
    res = f2_action_from_forest(fw, args.stages)
    vio = free_word_violation(res.maps, args.free_len)
    payload = {
        "schema": _schema("f2action"),
        "stages": args.stages,
        "result": res.as_obj(),
        "free_check": {
            "max_len": args.free_len,
            "violation": None
            if vio is None
            else {"point": vio[0], "word": list(vio[1])},
        },
    }
    return payload, 0 if vio is None else 3


def cmd_demo(args):
    s = standard_generators()
    w = expand_window(
        args.kind, _parse_base(args.kind, args.base), s, args.radius, args.margin
    )
    dg = build_doubling(w, s, 3)
    matching = interior_saturating_matching(dg)
    pd = matching_to_paradox(dg, matching)
    cert = verify_paradox(pd, w)
    classical = classical_f2_decomposition(w)
    cert_classical = verify_paradox(classical, w)

    m2 = paradox_to_matching(pd, dg)
    mset = {frozenset(e) for e in matching}
    subset_ok = all(frozenset(e) in mset for e in m2)
    covered0 = {e[0] for e in m2}
    interior0 = set(w.interior_indices())
    covers_interior = interior0 <= covered0

    bstats = unmatched_boundary_stats(dg, matching)
    reach = 2 * square_set(s).max_word_length()
    boundary_ok = bstats["unmatched_interior"] == 0 and (
        bstats["min_depth"] is None or bstats["min_depth"] >= w.radius - reach
    )
    ok = (
        cert.status == "PASS"
        and cert_classical.status == "PASS"
        and subset_ok
        and covers_interior
        and boundary_ok
    )
    payload = {
        "schema": _schema("demo"),
        "window": _window_meta(w),
        "piece_sizes": pd.piece_sizes(),
        "certificate": cert.as_obj(),
        "classical_certificate": cert_classical.as_obj(),
        "roundtrip": {
            "pairs": len(m2),
            "subset_of_matching": subset_ok,
            "covers_interior": covers_interior,
        },
        "boundary": bstats,
        "boundary_ok": boundary_ok,
        "pass": ok,
    }
    return payload, 0 if ok else 3


def build_parser() -> _Parser:
    parser = _Parser(prog="paradecomp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("hall-check", cmd_hall_check, "check Hall / Hall_(eps,n) on a graph file")
    p.add_argument("graph")
    p.add_argument("--epsilon", type=_fraction, default=None)
    p.add_argument("--floor", type=int, default=1)
    p.add_argument("--cap", type=int, default=8)

    p = add("layers", cmd_layers, "greedy sparse layering of a graph")
    p.add_argument("graph")
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--ratio", type=int, default=2)
    p.add_argument("--schedule", default=None, help="explicit f values, comma separated")

    p = add("match", cmd_match, "layered Hall-preserving perfect matching")
    p.add_argument("graph")
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--floor", type=int, default=1)
    p.add_argument("--cap", type=int, default=8)
    p.add_argument("--ratio", type=int, default=2)
    p.add_argument("--schedule", default=None)
    p.add_argument("--audit", action="store_true")
    p.add_argument("--dot", default=None, help="write a DOT rendering here")

    p = add("window", cmd_window, "expand an action window and dump its doubling graph")
    p.add_argument("--kind", choices=[F2, SPHERE], required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--margin", type=int, default=4)
    p.add_argument("--base", default=None)
    p.add_argument("--square", action="store_true", help="use the squared generating set")
    p.add_argument("--copies", type=int, choices=[3, 4], default=3)
    p.add_argument("--out", required=True)

    p = add("paradox", cmd_paradox, "build and verify a paradoxical decomposition")
    p.add_argument("--kind", choices=[F2, SPHERE], required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--margin", type=int, default=4)
    p.add_argument("--base", default=None)
    p.add_argument("--oracle", choices=["classical", "matched"], default="matched")
    p.add_argument("--out", default=None)

    p = add("verify", cmd_verify, "re-check an external decomposition on a window")
    p.add_argument("--pieces", required=True)
    p.add_argument("--kind", choices=[F2, SPHERE], default=None)
    p.add_argument("--radius", type=int, default=None)
    p.add_argument("--margin", type=int, default=None)
    p.add_argument("--base", default=None)

    p = add("transfer", cmd_transfer, "ball-majority transfer of a G_n matching")
    p.add_argument("--graph", required=True)
    p.add_argument("--gn-matching", dest="gn_matching", required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("forest", cmd_forest, "4-regular forest from a paradox window")
    p.add_argument("--from", dest="src", required=True, help="paradox output JSON")
    p.add_argument("--out", default=None)

    p = add("f2action", cmd_f2action, "staged free action on a forest window")
    p.add_argument("--from", dest="src", required=True, help="forest window JSON")
    p.add_argument(
        "--stages", type=int, required=True,
        help="highest stage index; N runs stages 0..N",
    )
    p.add_argument("--free-len", dest="free_len", type=int, default=6)

    p = add("demo", cmd_demo, "window -> doubling -> match -> pieces -> certificate")
    p.add_argument("--kind", choices=[F2, SPHERE], required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--margin", type=int, default=4)
    p.add_argument("--base", default=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.func(args)
    except ParadecompError as e:
        obj = e.as_json()
        obj["schema"] = _schema("error")
        _emit(obj)
        return e.exit_status
    except ValueError as e:
        # library-level argument validation (bad radius/margin combinations,
        # nonpositive epsilon, ...): precondition failure, not a crash
        _emit(
            {
                "schema": _schema("error"),
                "error": "PRECONDITION",
                "message": str(e),
            }
        )
        return 2
    except AssertionError as e:
        _emit(
            {
                "schema": _schema("error"),
                "error": "INVARIANT",
                "message": str(e) or "internal invariant failed",
            }
        )
        return 3
    _emit(payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
