import json

import pytest

from paradecomp import cli
from paradecomp.generators import complete_bipartite, line_window, star_graph, synthetic_forest
from paradecomp.graphs import graph_to_obj

import random


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def write_graph(path, g):
    path.write_text(json.dumps(graph_to_obj(g)))
    return str(path)


@pytest.fixture()
def k33(tmp_path):
    return write_graph(tmp_path / "k33.json", complete_bipartite(3, 3))


@pytest.fixture()
def star(tmp_path):
    return write_graph(tmp_path / "star.json", star_graph(3))


def test_hall_check_passes_on_k33(capsys, k33):
    code, obj = run(capsys, ["hall-check", k33])
    assert code == 0
    assert obj["schema"] == "paradecomp/hall-check/1"
    assert obj["satisfied"] is True


def test_hall_check_witness_on_star(capsys, star):
    code, obj = run(capsys, ["hall-check", star, "--epsilon", "1"])
    assert code == 2
    assert obj["satisfied"] is False
    w = obj["report"]["witness"]
    assert w["side"] == 1
    assert len(w["f_set"]) > w["actual"]


def test_match_star_reports_hypothesis_failure(capsys, star):
    code, obj = run(capsys, ["match", star, "--epsilon", "1"])
    assert code == 2
    assert obj["schema"] == "paradecomp/error/1"
    assert obj["error"] == "HYPOTHESIS_FAILED"
    assert obj["details"]["witness"] is not None


def test_match_k33_writes_matching_and_dot(capsys, k33, tmp_path):
    dot = tmp_path / "k33.dot"
    code, obj = run(
        capsys,
        ["match", k33, "--epsilon", "1/4", "--cap", "2", "--dot", str(dot)],
    )
    assert code == 0
    assert len(obj["result"]["matching"]) == 3
    assert "style=bold" in dot.read_text()


def test_layers_runs(capsys, k33):
    code, obj = run(capsys, ["layers", k33, "--epsilon", "1"])
    assert code == 0
    assert obj["schema"] == "paradecomp/layers/1"
    assert obj["layering"]["layers"]


def test_unknown_flag_exits_one(k33):
    with pytest.raises(SystemExit) as ei:
        cli.main(["hall-check", k33, "--no-such-flag"])
    assert ei.value.code == 1


def test_missing_subcommand_exits_one():
    with pytest.raises(SystemExit) as ei:
        cli.main([])
    assert ei.value.code == 1


def test_malformed_json_exits_one(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("this is not json")
    code, obj = run(capsys, ["hall-check", str(bad)])
    assert code == 1
    assert obj["error"] == "BAD_INPUT"


def test_missing_file_exits_one(capsys, tmp_path):
    code, obj = run(capsys, ["hall-check", str(tmp_path / "absent.json")])
    assert code == 1
    assert obj["error"] == "BAD_INPUT"


def test_bad_graph_shape_exits_one(capsys, tmp_path):
    f = tmp_path / "odd.json"
    f.write_text(json.dumps({"vertices": 5, "edges": []}))
    code, obj = run(capsys, ["hall-check", str(f)])
    assert code == 1
    assert obj["error"] == "BAD_GRAPH"
    assert "vertices" in obj["message"]


def test_window_radius_under_margin_is_a_precondition(capsys, tmp_path):
    code, obj = run(
        capsys,
        ["window", "--kind", "f2", "--radius", "3", "--out", str(tmp_path / "w.json")],
    )
    assert code == 2
    assert obj["error"] == "PRECONDITION"


def test_window_writes_graph_and_sidecar(capsys, tmp_path):
    out = tmp_path / "w.json"
    code, obj = run(
        capsys,
        ["window", "--kind", "f2", "--radius", "5", "--margin", "1", "--out", str(out)],
    )
    assert code == 0
    assert obj["n_points"] == 485
    g = json.loads(out.read_text())
    assert g["schema"] == "paradecomp/graph/1"
    side = json.loads((tmp_path / "w.points.json").read_text())
    assert len(side["words"]) == 485
    assert side["base_index"] == 0


def test_paradox_then_verify_roundtrip(capsys, tmp_path):
    out = tmp_path / "pieces.json"
    code, obj = run(
        capsys,
        ["paradox", "--kind", "f2", "--radius", "6", "--margin", "2", "--out", str(out)],
    )
    assert code == 0
    assert obj["certificate"]["status"] == "PASS"

    code, obj = run(capsys, ["verify", "--pieces", str(out)])
    assert code == 0
    assert obj["certificate"]["status"] == "PASS"

    # tampering with the base point's translate must break coverage
    data = json.loads(out.read_text())
    table = data["pieces"]["pieces_a"]
    key = "pieces_a"
    if not (table and table[0][0] == ""):
        table = data["pieces"]["pieces_b"]
        key = "pieces_b"
    assert table[0][0] == ""
    table[0][1] = (table[0][1] + 1) % 5
    bad = tmp_path / "tampered.json"
    bad.write_text(json.dumps(data))
    code, obj = run(capsys, ["verify", "--pieces", str(bad)])
    assert code == 2
    assert obj["certificate"]["status"] == "FAIL"


def test_verify_without_window_metadata_exits_one(capsys, tmp_path):
    f = tmp_path / "bare.json"
    f.write_text(json.dumps({"gens": [""], "pieces_a": [], "pieces_b": []}))
    code, obj = run(capsys, ["verify", "--pieces", str(f)])
    assert code == 1
    assert obj["error"] == "BAD_INPUT"


def test_transfer_cli_hand_case(capsys, tmp_path):
    gpath = write_graph(tmp_path / "path.json", line_window(16))
    m = [[k, k + 1] for k in range(0, 16, 2)]
    mpath = tmp_path / "m.json"
    mpath.write_text(json.dumps(m))
    code, obj = run(
        capsys,
        ["transfer", "--graph", gpath, "--gn-matching", str(mpath), "--n", "2"],
    )
    assert code == 0
    assert obj["excluded"] == [0, 14]
    assert obj["matching"] == [[x, x + 1] for x in range(2, 14, 2)]
    assert all(d == 1 for _, d in obj["directions"])


def test_forest_chain_from_paradox(capsys, tmp_path):
    pieces = tmp_path / "p.json"
    code, _ = run(
        capsys,
        ["paradox", "--kind", "f2", "--radius", "6", "--out", str(pieces)],
    )
    assert code == 0
    forest = tmp_path / "f.json"
    code, obj = run(capsys, ["forest", "--from", str(pieces), "--out", str(forest)])
    assert code == 0
    assert obj["stats"]["kept"] >= 1
    fobj = json.loads(forest.read_text())
    assert fobj["schema"] == "paradecomp/forest-window/1"

    # tiny forest: stage 0 needs radius >= 32 already
    code, obj = run(capsys, ["f2action", "--from", str(forest), "--stages", "0"])
    assert code == 2
    assert obj["error"] == "WINDOW_TOO_SMALL"


def test_f2action_on_synthetic_forest(capsys, tmp_path):
    fw = synthetic_forest(random.Random(5))
    src = tmp_path / "forest.json"
    src.write_text(json.dumps(fw.to_obj()))
    code, obj = run(capsys, ["f2action", "--from", str(src), "--stages", "1"])
    assert code == 0
    assert obj["free_check"]["violation"] is None
    assert obj["result"]["covered"] > 0
    assert len(obj["result"]["stages"]) == 2


def test_demo_f2_radius_ten_passes(capsys):
    code, obj = run(capsys, ["demo", "--kind", "f2", "--radius", "10"])
    assert code == 0
    assert obj["pass"] is True
    assert obj["certificate"]["status"] == "PASS"
    assert obj["classical_certificate"]["status"] == "PASS"
    assert obj["roundtrip"]["subset_of_matching"] is True
    assert obj["roundtrip"]["covers_interior"] is True
    assert obj["boundary_ok"] is True


def test_repeat_runs_are_byte_identical(capsys, k33):
    assert cli.main(["hall-check", k33]) == 0
    first = capsys.readouterr().out
    assert cli.main(["hall-check", k33]) == 0
    second = capsys.readouterr().out
    assert first == second
