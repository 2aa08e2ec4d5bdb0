from __future__ import annotations

import json
import random

import pytest

from rigidcheck import Hypergraph, HypergraphError, MultisetEdge, complete_hypergraph, sign_of
from rigidcheck.hypergraph import load_hypergraph


def E(*entries: str) -> MultisetEdge:
    return MultisetEdge(entries)


def test_support():
    assert E("a", "a", "a", "b").support() == {"a", "b"}
    assert E("a", "b", "c").support() == {"a", "b", "c"}
    assert E("a", "a", "a", "a").support() == {"a"}


def test_multiplicity():
    e = E("a", "a", "a", "b")
    assert e.multiplicity("a") == 3
    assert e.multiplicity("c") == 0
    assert E("a", "a", "a", "a").multiplicity("a") == 4


def test_replace():
    assert E("a", "a", "a", "b").replace("a", "b") == E("a", "a", "b", "b")
    assert E("a", "b", "c").replace("c", "a") == E("a", "a", "b")
    assert E("a", "a", "a", "a").replace("a", "a") == E("a", "a", "a", "a")
    with pytest.raises(HypergraphError, match="not in edge"):
        E("a", "b").replace("c", "a")


def test_replace_multiplicity_property():
    rng = random.Random(0)
    verts = ["a", "b", "c", "d", "e"]
    for _ in range(200):
        e = E(*(rng.choice(verts) for _ in range(rng.randint(1, 5))))
        u = rng.choice(e.entries)
        v = rng.choice(verts)
        r = e.replace(u, v)
        if u != v:
            assert r.multiplicity(v) == e.multiplicity(v) + 1
            assert r.multiplicity(u) == e.multiplicity(u) - 1
        else:
            assert r == e


def test_canonicalization_idempotent():
    e = E("c", "a", "b")
    assert MultisetEdge(e.entries) == e
    assert e.entries == ("a", "b", "c")


def test_edge_equality_is_multiset_equality():
    assert E("b", "a", "a") == E("a", "b", "a")
    assert E("a", "a", "b") != E("a", "b", "b")


def test_sign_of():
    assert sign_of(("a", "b", "c"), "a") == 1
    assert sign_of(("a", "b", "c"), "b") == -1
    assert sign_of(("a", "b", "c"), "c") == 1
    with pytest.raises(HypergraphError):
        sign_of(("a", "b"), "z")


def test_hypergraph_validation():
    with pytest.raises(HypergraphError, match="duplicate edge"):
        Hypergraph(2, ["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(HypergraphError, match="unknown vertex"):
        Hypergraph(2, ["a", "b"], [("a", "z")])
    with pytest.raises(HypergraphError, match="expected k=2"):
        Hypergraph(2, ["a", "b"], [("a", "b", "b")])
    with pytest.raises(HypergraphError, match="duplicate vertex"):
        Hypergraph(2, ["a", "a"], [])


def test_induced_edges(chain_order3):
    G = chain_order3
    got = G.induced_edges({"a", "b"})
    assert got == [E("a", "a", "a"), E("a", "a", "b")]
    assert G.induced_edges(set(G.vertices)) == list(G.edges)
    assert G.induced_edges({"d"}) == []
    assert G.induced_edges(set()) == []
    with pytest.raises(HypergraphError):
        G.induced_edges({"a", "z"})


def test_closed_neighbor_set(chain_order3):
    G = chain_order3
    got = G.closed_neighbor_set([E("a", "a", "b")])
    assert set(got) == {E("a", "a", "a"), E("a", "a", "b"), E("a", "b", "c")}
    assert G.closed_neighbor_set([]) == []
    with pytest.raises(HypergraphError):
        G.closed_neighbor_set([E("a", "a", "d")])


def test_closed_neighbor_brute_force(chain_order3):
    # independent enumeration over all (e, u, v) triples
    G = chain_order3
    for subset_size in range(len(G.edges) + 1):
        eprime = list(G.edges[:subset_size])
        expected = set()
        for e in eprime:
            for u in set(e.entries):
                for v in G.vertices:
                    cand = MultisetEdge(e.remove_one(u) + (v,))
                    if cand in G:
                        expected.add(cand)
        assert set(G.closed_neighbor_set(eprime)) == expected
        assert expected >= set(eprime)  # reflexivity


def test_shadow(pair_unique, pair_inconclusive):
    assert [list(s) for s in pair_unique.shadow()] == [
        ["a", "a", "a"],
        ["a", "a", "b"],
        ["b", "b", "b"],
    ]
    assert [ "".join(s) for s in pair_inconclusive.shadow()] == ["aaa", "aab", "abb", "bbb"]
    G = Hypergraph(3, ["a", "b", "c"], [("a", "b", "c")])
    assert ["".join(s) for s in G.shadow()] == ["ab", "ac", "bc"]
    with pytest.raises(HypergraphError):
        Hypergraph(1, ["a"], [("a",)]).shadow()


def test_complete_hypergraph_counts():
    G = complete_hypergraph(2, 4)
    assert [e.label() for e in G.edges] == ["aaaa", "aaab", "aabb", "abbb", "bbbb"]
    assert complete_hypergraph(3, 2).m == 6
    assert complete_hypergraph(4, 1).m == 4
    with pytest.raises(HypergraphError, match="too large"):
        complete_hypergraph(100, 10)


def test_shadow_size_of_complete():
    from math import comb

    for n, k in [(2, 4), (3, 3), (4, 2), (5, 3)]:
        G = complete_hypergraph(n, k)
        assert len(G.shadow()) == comb(n + k - 2, k - 1)


def test_edge_order_follows_vertex_listing():
    # canonical order is by dense index, not name
    G = Hypergraph(2, ["b", "a"], [("a", "a"), ("b", "a")])
    assert [e.label() for e in G.edges] == ["ab", "aa"]


def test_json_roundtrip(tmp_path, pair_unique):
    data = pair_unique.to_json_dict()
    G2 = Hypergraph.from_json_dict(data)
    assert G2.edges == pair_unique.edges
    path = tmp_path / "g.json"
    path.write_text(json.dumps(data))
    G3 = load_hypergraph(str(path))
    assert G3.edges == pair_unique.edges
    assert G3.to_json_dict() == data


def test_json_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    with pytest.raises(HypergraphError, match="invalid JSON"):
        load_hypergraph(str(bad))
    with pytest.raises(HypergraphError, match="missing field"):
        Hypergraph.from_json_dict({"k": 2})
    with pytest.raises(HypergraphError, match="must be an integer"):
        Hypergraph.from_json_dict({"k": "2", "vertices": [], "edges": []})


def test_json_canonicalizes_and_rejects_duplicates():
    data = {"k": 2, "vertices": ["a", "b"], "edges": [["b", "a"]]}
    G = Hypergraph.from_json_dict(data)
    assert G.edges[0] == E("a", "b")
    dup = {"k": 2, "vertices": ["a", "b"], "edges": [["a", "b"], ["b", "a"]]}
    with pytest.raises(HypergraphError, match="duplicate edge"):
        Hypergraph.from_json_dict(dup)


def test_ordered_view_retained():
    G = Hypergraph(3, ["a", "b", "c"], [("c", "a", "b")])
    e = G.edges[0]
    assert e.entries == ("a", "b", "c")
    assert G.ordered_view(e) == ("c", "a", "b")
