from __future__ import annotations

import json

import pytest

from rigidcheck.cli import main

PAIR_UNIQUE = {
    "k": 4,
    "vertices": ["a", "b"],
    "edges": [["a", "a", "a", "a"], ["a", "a", "a", "b"], ["b", "b", "b", "b"]],
}
PAIR_INCONCLUSIVE = {
    "k": 4,
    "vertices": ["a", "b"],
    "edges": [["a", "a", "a", "a"], ["a", "b", "b", "b"], ["a", "a", "a", "b"]],
}
SQUARE = {
    "k": 2,
    "vertices": ["1", "2", "3", "4"],
    "edges": [["1", "2"], ["2", "3"], ["3", "4"], ["4", "1"]],
}
SQUARE_DIAG = {
    "k": 2,
    "vertices": ["1", "2", "3", "4"],
    "edges": [["1", "2"], ["2", "3"], ["3", "4"], ["4", "1"], ["1", "3"]],
}


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, data in [
        ("unique", PAIR_UNIQUE),
        ("inconclusive", PAIR_INCONCLUSIVE),
        ("square", SQUARE),
        ("square_diag", SQUARE_DIAG),
    ]:
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(data))
        paths[name] = str(p)
    return paths


def test_analyze_exit_codes(files, capsys):
    assert main(["analyze", files["unique"], "--map", "prod", "--rank", "1"]) == 0
    out = capsys.readouterr().out
    assert "globally-rigid" in out
    assert main(["analyze", files["inconclusive"], "--map", "prod", "--rank", "1"]) == 30
    assert main(["analyze", files["square"], "--map", "sqdist", "--dim", "2"]) == 20
    assert main(["analyze", files["square_diag"], "--map", "sqdist", "--dim", "2"]) == 10
    capsys.readouterr()


def test_analyze_json_output(files, capsys):
    code = main(["analyze", files["unique"], "--map", "prod", "--rank", "1", "--json", "--domain", "exact"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdict"] == "globally-rigid"
    assert payload["ranks"]["jacobian"] == 2
    assert payload["shadow_size"] == 3
    assert payload["kernel_dims"] == {"left": 0, "right": 1}
    names = [c["name"] for c in payload["conditions"]]
    assert names == [
        "infinitesimally-rigid-at-sample",
        "shadow-count",
        "adjacency-kernel-dimension",
    ]


def test_analyze_poly_map(files, capsys):
    code = main(["analyze", files["square"], "--map", "poly:(x1_1-x2_1)^2", "--dim", "1"])
    assert code in (10, 20)
    capsys.readouterr()


def test_analyze_input_errors(files, tmp_path, capsys):
    missing = str(tmp_path / "nope.json")
    assert main(["analyze", missing, "--map", "prod"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    assert main(["analyze", str(bad), "--map", "prod"]) == 2
    assert main(["analyze", files["square"], "--map", "sqdist"]) == 2  # missing --dim
    assert main(["analyze", files["square"], "--map", "poly:x9_1", "--dim", "1"]) == 2
    err = capsys.readouterr().err
    assert "out of range" in err and "position" in err
    assert main(["analyze", files["square"], "--map", "wat"]) == 2
    capsys.readouterr()


def test_tensor_command(tmp_path, capsys):
    t = tmp_path / "t.tns"
    t.write_text("4 2 1\n1 1 1 1 16\n1 1 1 2 24\n2 2 2 2 81\n")
    code = main(["tensor", str(t), "--fit", "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["report"]["verdict"] == "globally-rigid"
    assert "unique completion" in payload["interpretation"]
    assert payload["fit"]["residual"] < 1e-8


def test_tensor_pattern_only_fit_is_input_error(tmp_path, capsys):
    t = tmp_path / "p.tns"
    t.write_text("4 2 1\n1 1 1 1 ?\n1 1 1 2 ?\n2 2 2 2 ?\n")
    assert main(["tensor", str(t)]) == 0  # analysis alone works
    assert main(["tensor", str(t), "--fit"]) == 2
    assert "fit requires values" in capsys.readouterr().err


def test_tensor_malformed_header(tmp_path, capsys):
    t = tmp_path / "bad.tns"
    t.write_text("4 2\n1 1 1 1 16\n")
    assert main(["tensor", str(t)]) == 2
    capsys.readouterr()


def test_tensor_rank_override(tmp_path, capsys):
    t = tmp_path / "t.tns"
    t.write_text("4 2 1\n1 1 1 1 ?\n1 1 1 2 ?\n2 2 2 2 ?\n")
    assert main(["tensor", str(t), "--rank", "0"]) == 2
    code = main(["tensor", str(t), "--rank", "2", "--json"])
    assert code in (20, 30)
    payload = json.loads(capsys.readouterr().out)
    assert payload["tensor"]["d"] == 2


def test_packing_command(tmp_path, capsys):
    g = tmp_path / "k32.json"
    g.write_text(
        json.dumps(
            {
                "k": 2,
                "vertices": ["1", "2", "3"],
                "edges": [["1", "1"], ["1", "2"], ["2", "2"], ["1", "3"], ["2", "3"], ["3", "3"]],
            }
        )
    )
    part_ok = tmp_path / "single.txt"
    part_ok.write_text("# one block\n1 2 3\n")
    assert main(["packing", str(g), str(part_ok), "--map", "prod"]) == 0

    k42 = tmp_path / "k42.json"
    verts = ["1", "2", "3", "4"]
    edges = [[verts[i], verts[j]] for i in range(4) for j in range(i, 4)]
    k42.write_text(json.dumps({"k": 2, "vertices": verts, "edges": edges}))
    part_bad = tmp_path / "pair.txt"
    part_bad.write_text("1 2\n3 4\n")
    assert main(["packing", str(k42), str(part_bad), "--map", "prod"]) == 1
    out = capsys.readouterr().out
    assert "P3" in out and "e=" in out

    part_alien = tmp_path / "alien.txt"
    part_alien.write_text("1 z\n")
    assert main(["packing", str(g), str(part_alien), "--map", "prod"]) == 2
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing\n")
    assert main(["packing", str(g), str(empty), "--map", "prod"]) == 2
    assert main(["packing", str(g), str(part_ok), "--map", "sqdist", "--dim", "1"]) == 2
    err = capsys.readouterr().err
    assert "multilinear" in err


def test_examples_all_pass(capsys):
    assert main(["examples"]) == 0
    out = capsys.readouterr().out
    assert "all cases pass: True" in out


def test_examples_single_case(capsys):
    assert main(["examples", "--case", "euclid-triangle", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["cases"]) == 1
    assert payload["cases"][0]["id"] == "euclid-triangle"
    assert main(["examples", "--case", "no-such-case"]) == 2
    assert "available" in capsys.readouterr().err


def test_examples_json_deterministic(capsys):
    assert main(["examples", "--json", "--seed", "777"]) == 0
    first = capsys.readouterr().out
    assert main(["examples", "--json", "--seed", "777"]) == 0
    second = capsys.readouterr().out
    assert first == second


def test_seed_env_fallback(files, monkeypatch, capsys):
    monkeypatch.setenv("RIGIDCHECK_SEED", "424242")
    assert main(["analyze", files["unique"], "--map", "prod", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["certificate"]["seed"] == 424242
    monkeypatch.setenv("RIGIDCHECK_SEED", "oops")
    assert main(["analyze", files["unique"], "--map", "prod"]) == 2
    capsys.readouterr()
