"""Built-in regression cases on desk-size instances with known outcomes.

Each case reruns an analysis from scratch and compares against frozen
expected values (ranks, kernel dimensions, verdicts, or entry-wise matrix
identities). The suite is the quick health check behind the `examples` CLI
command; given the same seed its JSON output is byte-identical across runs.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .engine import EngineConfig, build_alpha_jacobian, global_rigidity_prod, is_locally_rigid, measurement
from .engine import PointConfig
from .hypergraph import Hypergraph
from .polymap import h_prod, sq_euclid

_SAMPLES = 3  # entry-wise identity checks per matrix case


@dataclass(frozen=True)
class Case:
    id: str
    title: str
    run: Callable[[int], tuple[dict, dict]]  # seed -> (expected, observed)


def _cfg(seed: int) -> EngineConfig:
    return EngineConfig(seed=seed, trials=2, domain="exact")


def _rand_frac(rng: random.Random) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-999, 999)
    return Fraction(num, rng.randint(1, 60))


def _pair_graph(edges) -> Hypergraph:
    return Hypergraph(4, ["a", "b"], edges)


def _case_unique_order4(seed: int) -> tuple[dict, dict]:
    G = _pair_graph([("a",) * 4, ("a", "a", "a", "b"), ("b",) * 4])
    rep = global_rigidity_prod(G, 1, _cfg(seed))
    expected = {
        "verdict": "globally-rigid",
        "jacobian_rank": 2,
        "shadow_size": 3,
        "adjacency_kernel_dim": 1,
    }
    observed = {
        "verdict": rep.verdict,
        "jacobian_rank": rep.ranks["jacobian"],
        "shadow_size": rep.shadow_size,
        "adjacency_kernel_dim": rep.kernel_dims["right"] if rep.kernel_dims else None,
    }
    return expected, observed


def _case_inconclusive_order4(seed: int) -> tuple[dict, dict]:
    G = _pair_graph([("a",) * 4, ("a", "b", "b", "b"), ("a", "a", "a", "b")])
    rep = global_rigidity_prod(G, 1, _cfg(seed))
    expected = {
        "verdict": "inconclusive-global",
        "jacobian_rank": 2,
        "shadow_size": 4,
        "adjacency_kernel_dim": 2,
        "locally_rigid": True,
    }
    observed = {
        "verdict": rep.verdict,
        "jacobian_rank": rep.ranks["jacobian"],
        "shadow_size": rep.shadow_size,
        "adjacency_kernel_dim": rep.kernel_dims["right"] if rep.kernel_dims else None,
        "locally_rigid": rep.verdicts["locally_rigid"],
    }
    return expected, observed


_SQUARE = [("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")]
_SQUARE_DIAG = _SQUARE + [("1", "3")]
_TRIANGLE = [("1", "2"), ("2", "3"), ("1", "3")]


def _euclid_case(case_id: str, edges, n: int, dim: int, exp_rank: int, exp_ref: int):
    def run(seed: int) -> tuple[dict, dict]:
        G = Hypergraph(2, [str(i) for i in range(1, n + 1)], edges)
        rep = is_locally_rigid(sq_euclid(dim), G, _cfg(seed), map_label="sqdist")
        expected = {"rank": exp_rank, "reference": exp_ref, "locally_rigid": exp_rank == exp_ref}
        observed = {
            "rank": rep.jacobian_rank,
            "reference": rep.reference_rank,
            "locally_rigid": rep.locally_rigid,
        }
        return expected, observed

    return run


def _case_laplacian_correspondence(seed: int) -> tuple[dict, dict]:
    # weighted Hessian of the 1-d squared-distance map on a 4-cycle must be
    # exactly twice the edge-weighted graph Laplacian, with zero row sums
    G = Hypergraph(2, ["1", "2", "3", "4"], _SQUARE)
    h = sq_euclid(1)
    rng = random.Random(f"rigidcheck-case:laplacian:{seed}")
    matches = True
    row_sums_zero = True
    for _ in range(_SAMPLES):
        w = {e: _rand_frac(rng) for e in G.edges}
        q = PointConfig({v: (_rand_frac(rng),) for v in G.vertices}, 1)
        alpha = build_alpha_jacobian(h, G, w, q)
        for i, u in enumerate(G.vertices):
            for j, v in enumerate(G.vertices):
                if i == j:
                    lap = sum(we for e, we in w.items() if e.multiplicity(u) == 1)
                else:
                    lap = -sum(
                        we for e, we in w.items() if e.multiplicity(u) and e.multiplicity(v)
                    )
                if alpha.entries[i][j] != 2 * lap:
                    matches = False
        for row in alpha.entries:
            if sum(row) != 0:
                row_sums_zero = False
    expected = {"matches_2x_weighted_laplacian": True, "row_sums_zero": True}
    observed = {"matches_2x_weighted_laplacian": matches, "row_sums_zero": row_sums_zero}
    return expected, observed


def _case_adjacency_inner_triangle(seed: int) -> tuple[dict, dict]:
    # scalar product map on a triangle: the weighted Hessian is exactly the
    # weighted adjacency matrix of the graph
    G = Hypergraph(2, ["1", "2", "3"], _TRIANGLE)
    h = h_prod(2)
    rng = random.Random(f"rigidcheck-case:inner-triangle:{seed}")
    matches = True
    for _ in range(_SAMPLES):
        w = [_rand_frac(rng) for _ in range(3)]  # canonical edge order 12, 13, 23
        q = PointConfig({v: (_rand_frac(rng),) for v in G.vertices}, 1)
        alpha = build_alpha_jacobian(h, G, w, q)
        expect = [
            [0, w[0], w[1]],
            [w[0], 0, w[2]],
            [w[1], w[2], 0],
        ]
        if alpha.entries != [[Fraction(x) for x in row] for row in expect]:
            matches = False
    return {"matches_weighted_adjacency": True}, {"matches_weighted_adjacency": matches}


def _case_order3_chain_hessian(seed: int) -> tuple[dict, dict]:
    # 3-uniform chain on four vertices: frozen symbolic form of the weighted
    # Hessian, checked entry-wise at random rational substitutions
    G = Hypergraph(3, ["a", "b", "c", "d"], [("a", "a", "a"), ("a", "a", "b"), ("a", "b", "c"), ("b", "c", "d")])
    h = h_prod(3)
    rng = random.Random(f"rigidcheck-case:order3-chain:{seed}")
    matches = True
    for _ in range(_SAMPLES):
        v1, v2, v3, v4 = (_rand_frac(rng) for _ in range(4))
        xa, xb, xc, xd = (_rand_frac(rng) for _ in range(4))
        q = PointConfig({"a": (xa,), "b": (xb,), "c": (xc,), "d": (xd,)}, 1)
        alpha = build_alpha_jacobian(h, G, [v1, v2, v3, v4], q)
        expect = [
            [6 * v1 * xa + 2 * v2 * xb, 2 * v2 * xa + v3 * xc, v3 * xb, 0],
            [2 * v2 * xa + v3 * xc, 0, v3 * xa + v4 * xd, v4 * xc],
            [v3 * xb, v3 * xa + v4 * xd, 0, v4 * xb],
            [0, v4 * xc, v4 * xb, 0],
        ]
        if alpha.entries != [[Fraction(x) for x in row] for row in expect]:
            matches = False
    return {"matches_frozen_hessian": True}, {"matches_frozen_hessian": matches}


def _case_order3_measurement(seed: int) -> tuple[dict, dict]:
    # 3-uniform pattern on three vertices: measurement vector and the sparse
    # pattern of the weighted adjacency matrix
    from .engine import adjacency_matrix

    G = Hypergraph(3, ["a", "b", "c"], [("a", "a", "a"), ("a", "a", "b"), ("a", "b", "c")])
    rng = random.Random(f"rigidcheck-case:order3-measurement:{seed}")
    xa, xb, xc = (_rand_frac(rng) for _ in range(3))
    p = PointConfig({"a": (xa,), "b": (xb,), "c": (xc,)}, 1)
    meas = measurement(h_prod(3), G, p)
    meas_ok = meas == [xa**3, xa**2 * xb, xa * xb * xc]
    w1, w2, w3 = (_rand_frac(rng) for _ in range(3))
    A = adjacency_matrix(G, [w1, w2, w3])
    expect = [
        [3 * w1, 2 * w2, 0, w3],
        [w2, 0, w3, 0],
        [0, w3, 0, 0],
    ]
    adj_ok = A.entries == [[Fraction(x) for x in row] for row in expect]
    shadow_ok = [list(s) for s in G.shadow()] == [["a", "a"], ["a", "b"], ["a", "c"], ["b", "c"]]
    expected = {"measurement_matches": True, "adjacency_matches": True, "shadow_order": True}
    observed = {"measurement_matches": meas_ok, "adjacency_matches": adj_ok, "shadow_order": shadow_ok}
    return expected, observed


CASES: tuple[Case, ...] = (
    Case("unique-order4-pair", "order-4 two-vertex pattern with a unique completion", _case_unique_order4),
    Case("inconclusive-order4-pair", "order-4 two-vertex pattern where the certificate fails", _case_inconclusive_order4),
    Case("euclid-triangle", "triangle is rigid in the plane", _euclid_case("euclid-triangle", _TRIANGLE, 3, 2, 3, 3)),
    Case("euclid-4cycle", "4-cycle is flexible in the plane", _euclid_case("euclid-4cycle", _SQUARE, 4, 2, 4, 5)),
    Case(
        "euclid-square-diagonal-2d",
        "square with one diagonal is rigid in the plane",
        _euclid_case("euclid-square-diagonal-2d", _SQUARE_DIAG, 4, 2, 5, 5),
    ),
    Case(
        "euclid-square-diagonal-3d",
        "square with one diagonal is flexible in space",
        _euclid_case("euclid-square-diagonal-3d", _SQUARE_DIAG, 4, 3, 5, 6),
    ),
    Case("laplacian-4cycle", "squared-distance Hessian is twice the weighted Laplacian", _case_laplacian_correspondence),
    Case("adjacency-inner-triangle", "product-map Hessian equals the weighted adjacency matrix", _case_adjacency_inner_triangle),
    Case("order3-chain-hessian", "3-uniform chain weighted Hessian matches its frozen form", _case_order3_chain_hessian),
    Case("order3-measurement", "3-uniform measurement vector and adjacency pattern", _case_order3_measurement),
)


def case_ids() -> list[str]:
    return [c.id for c in CASES]


def run_case(case: Case, seed: int) -> dict:
    expected, observed = case.run(seed)
    return {
        "id": case.id,
        "title": case.title,
        "expected": expected,
        "observed": observed,
        "pass": expected == observed,
    }


def run_suite(seed: int, only: str | None = None) -> dict:
    cases = [c for c in CASES if only is None or c.id == only]
    if only is not None and not cases:
        raise KeyError(only)
    results = [run_case(c, seed) for c in cases]
    return {"seed": seed, "cases": results, "all_pass": all(r["pass"] for r in results)}
