"""k-uniform hypergraphs with multiset hyperedges.

Vertices are arbitrary strings; every hypergraph maps them to dense indices
0..n-1 in listed order, and all derived orderings (edge rows, shadow columns)
follow those indices so matrix layouts are reproducible across runs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping, Sequence

MAX_COMPLETE_EDGES = 500_000


class HypergraphError(ValueError):
    pass


@dataclass(frozen=True)
class MultisetEdge:
    """A size-k multiset of vertex names, stored sorted.

    Two edges are equal iff their sorted entry tuples are equal, i.e. iff
    they are equal as multisets.
    """

    entries: tuple[str, ...]

    def __init__(self, entries: Iterable[str]):
        ent = tuple(sorted(str(v) for v in entries))
        if not ent:
            raise HypergraphError("edge must have at least one entry")
        object.__setattr__(self, "entries", ent)

    @property
    def k(self) -> int:
        return len(self.entries)

    def support(self) -> frozenset[str]:
        """Vertex set of the edge, multiplicities dropped."""
        return frozenset(self.entries)

    def multiplicity(self, v: str) -> int:
        """Number of copies of v in the edge (0 if absent)."""
        return self.entries.count(v)

    def replace(self, u: str, v: str) -> MultisetEdge:
        """Remove one copy of u, add one copy of v (the edge e - u + v)."""
        if u not in self.entries:
            raise HypergraphError(f"vertex {u!r} not in edge {self}")
        ent = list(self.entries)
        ent.remove(u)
        ent.append(v)
        return MultisetEdge(ent)

    def remove_one(self, u: str) -> tuple[str, ...]:
        """The sorted (k-1)-multiset e - u."""
        if u not in self.entries:
            raise HypergraphError(f"vertex {u!r} not in edge {self}")
        ent = list(self.entries)
        ent.remove(u)
        return tuple(ent)

    def label(self) -> str:
        if all(len(v) == 1 for v in self.entries):
            return "".join(self.entries)
        return ",".join(self.entries)

    def __str__(self) -> str:
        return self.label()


def support(e: MultisetEdge) -> frozenset[str]:
    return e.support()


def replace(e: MultisetEdge, u: str, v: str) -> MultisetEdge:
    return e.replace(u, v)


def multiplicity(e: MultisetEdge, v: str) -> int:
    return e.multiplicity(v)


def sign_of(ordered_edge: Sequence[str], v: str) -> int:
    """Position parity of v in an ordered edge: +1 at odd (1-based) positions.

    Used by the signed adjacency matrix for anti-symmetric maps; the first
    occurrence decides when v is repeated.
    """
    try:
        pos = list(ordered_edge).index(v) + 1
    except ValueError:
        raise HypergraphError(f"vertex {v!r} not in edge {tuple(ordered_edge)}") from None
    return 1 if pos % 2 == 1 else -1


@dataclass(frozen=True)
class Shadow:
    """All (k-1)-multisets contained in some hyperedge, canonically ordered.

    The order is lexicographic on the index tuples of the sorted multisets;
    it fixes the column order of adjacency matrices.
    """

    sigmas: tuple[tuple[str, ...], ...]

    def __len__(self) -> int:
        return len(self.sigmas)

    def __iter__(self):
        return iter(self.sigmas)

    def index(self, sigma: Sequence[str]) -> int:
        return self.sigmas.index(tuple(sorted(sigma)))


class Hypergraph:
    """A k-uniform hypergraph with multiset edges on named vertices.

    Immutable after construction. Edges are deduplicated and kept in
    canonical order (lexicographic on vertex indices); the input ordering of
    each edge is retained separately for sign computations with
    anti-symmetric maps.
    """

    def __init__(self, k: int, vertices: Sequence[str], edges: Iterable[Sequence[str]] = ()):
        if k < 1:
            raise HypergraphError(f"order k must be positive, got {k}")
        verts = tuple(str(v) for v in vertices)
        if len(set(verts)) != len(verts):
            raise HypergraphError("duplicate vertex names")
        self.k = k
        self.vertices = verts
        self.index: dict[str, int] = {v: i for i, v in enumerate(verts)}

        canon: dict[MultisetEdge, tuple[str, ...]] = {}
        for raw in edges:
            ordered = tuple(str(v) for v in raw)
            if len(ordered) != k:
                raise HypergraphError(f"edge {ordered} has {len(ordered)} entries, expected k={k}")
            for v in ordered:
                if v not in self.index:
                    raise HypergraphError(f"edge {ordered} uses unknown vertex {v!r}")
            e = MultisetEdge(ordered)
            if e in canon:
                raise HypergraphError(f"duplicate edge {e}")
            canon[e] = ordered
        order = sorted(canon, key=lambda e: self.edge_key(e))
        self.edges: tuple[MultisetEdge, ...] = tuple(order)
        self._ordered: dict[MultisetEdge, tuple[str, ...]] = {e: canon[e] for e in order}
        self._edge_pos: dict[MultisetEdge, int] = {e: i for i, e in enumerate(order)}

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_key(self, e: MultisetEdge) -> tuple[int, ...]:
        return tuple(sorted(self.index[v] for v in e.entries))

    def edge_position(self, e: MultisetEdge) -> int:
        try:
            return self._edge_pos[e]
        except KeyError:
            raise HypergraphError(f"edge {e} not in hypergraph") from None

    def ordered_view(self, e: MultisetEdge) -> tuple[str, ...]:
        """The edge as given on input (for position-parity signs)."""
        self.edge_position(e)
        return self._ordered[e]

    def __contains__(self, e: MultisetEdge) -> bool:
        return e in self._edge_pos

    def __repr__(self) -> str:
        return f"Hypergraph(k={self.k}, n={self.n}, m={self.m})"

    # -- combinatorial operations ----------------------------------------

    def induced_edges(self, X: Iterable[str]) -> list[MultisetEdge]:
        """Edges whose support lies inside the vertex set X."""
        Xs = set(X)
        unknown = Xs - set(self.vertices)
        if unknown:
            raise HypergraphError(f"vertices not in hypergraph: {sorted(unknown)}")
        return [e for e in self.edges if e.support() <= Xs]

    def induced_subgraph(self, X: Iterable[str]) -> Hypergraph:
        Xs = set(X)
        verts = [v for v in self.vertices if v in Xs]
        if len(verts) != len(Xs):
            raise HypergraphError(f"vertices not in hypergraph: {sorted(Xs - set(verts))}")
        return Hypergraph(self.k, verts, [e.entries for e in self.induced_edges(Xs)])

    def closed_neighbor_set(self, eprime: Iterable[MultisetEdge]) -> list[MultisetEdge]:
        """All edges of the hypergraph reachable from E' by one replacement.

        Returns { e - u + v : e in E', u in e, v in V } intersected with the
        edge set, in canonical order. Always contains E' (u = v is allowed).
        """
        eset = list(eprime)
        for e in eset:
            if e not in self:
                raise HypergraphError(f"edge {e} not in hypergraph")
        found: set[MultisetEdge] = set()
        for e in eset:
            for u in e.support():
                for v in self.vertices:
                    cand = e.replace(u, v)
                    if cand in self:
                        found.add(cand)
        return sorted(found, key=self.edge_key)

    def shadow(self) -> Shadow:
        """All (k-1)-multisets obtained by deleting one entry from an edge."""
        if self.k < 2:
            raise HypergraphError("shadow requires k >= 2")
        sigmas: set[tuple[str, ...]] = set()
        for e in self.edges:
            for u in e.support():
                sigmas.add(e.remove_one(u))
        order = sorted(sigmas, key=lambda s: tuple(self.index[v] for v in s))
        return Shadow(tuple(order))

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "vertices": list(self.vertices),
            "edges": [list(self._ordered[e]) for e in self.edges],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> Hypergraph:
        try:
            k = data["k"]
            vertices = data["vertices"]
            edges = data["edges"]
        except (KeyError, TypeError) as exc:
            raise HypergraphError(f"hypergraph JSON missing field: {exc}") from None
        if not isinstance(k, int):
            raise HypergraphError("field 'k' must be an integer")
        return cls(k, vertices, edges)


def load_hypergraph(path: str) -> Hypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise HypergraphError(f"{path}: invalid JSON: {exc}") from None
    return Hypergraph.from_json_dict(data)


def _default_names(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return [f"v{i}" for i in range(n)]


def complete_hypergraph(
    n: int, k: int, vertices: Sequence[str] | None = None, max_edges: int = MAX_COMPLETE_EDGES
) -> Hypergraph:
    """All multisets of size k on n vertices: C(n+k-1, k) edges."""
    if n < 1 or k < 1:
        raise HypergraphError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    count = comb(n + k - 1, k)
    if count > max_edges:
        raise HypergraphError(f"instance too large: complete hypergraph has {count} edges (limit {max_edges})")
    names = list(vertices) if vertices is not None else _default_names(n)
    if len(names) != n:
        raise HypergraphError(f"expected {n} vertex names, got {len(names)}")
    edges = []
    # stars-and-bars enumeration in index order keeps the canonical layout
    def emit(start: int, prefix: list[str]):
        if len(prefix) == k:
            edges.append(tuple(prefix))
            return
        for i in range(start, n):
            emit(i, prefix + [names[i]])

    emit(0, [])
    return Hypergraph(k, names, edges)
