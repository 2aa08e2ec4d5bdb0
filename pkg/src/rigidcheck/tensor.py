"""Partially observed symmetric tensors and their completability.

A partial symmetric tensor of order k and size n is a map from sorted
k-multisets over 1..n to observed values. Under the rank-d model an entry at
multiset e equals sum_{c=1}^d prod_{v in e} x_c(v), so the observation
pattern is exactly a k-uniform hypergraph and completability questions
reduce to rigidity of that hypergraph under sums of product maps: locally
rigid means finitely many completions of a generic instance, globally rigid
means a unique one up to the model's symmetries. Observed values never
affect the verdict; they only feed the numeric fitter.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .engine import EngineConfig, RigidityReport, global_rigidity_prod, is_locally_rigid
from .hypergraph import Hypergraph


class TensorError(ValueError):
    pass


class PartialSymmetricTensor:
    """Observed entries of a symmetric order-k size-n tensor, plus a target rank."""

    def __init__(self, n: int, k: int, d: int,
                 entries: Mapping[Sequence[int], object] | None = None):
        if n < 1 or k < 1 or d < 1:
            raise TensorError(f"need n, k, d >= 1, got n={n}, k={k}, d={d}")
        self.n = n
        self.k = k
        self.d = d
        self.entries: dict[tuple[int, ...], object] = {}
        for idx, value in (entries or {}).items():
            self.observe(idx, value)

    def observe(self, idx: Sequence[int], value=None) -> None:
        key = tuple(sorted(int(i) for i in idx))
        if len(key) != self.k:
            raise TensorError(f"index {tuple(idx)} has {len(key)} entries, expected k={self.k}")
        if any(i < 1 or i > self.n for i in key):
            raise TensorError(f"index {tuple(idx)} out of range 1..{self.n}")
        if key in self.entries:
            raise TensorError(f"duplicate entry for index {key}")
        self.entries[key] = value

    @property
    def observed_indices(self) -> list[tuple[int, ...]]:
        return sorted(self.entries)

    def valued_entries(self) -> dict[tuple[int, ...], float]:
        return {idx: float(v) for idx, v in self.entries.items() if v is not None}

    def __repr__(self) -> str:
        return f"PartialSymmetricTensor(n={self.n}, k={self.k}, d={self.d}, observed={len(self.entries)})"


# -- text format -----------------------------------------------------------------
#
# header: `k n d`; then one line per observed entry: `i1 ... ik value` with
# 1-based indices in any order; value may be omitted or `?` for pattern-only
# entries. Lines starting with `#` are comments.


def parse_tensor(text: str) -> PartialSymmetricTensor:
    lines = text.splitlines()
    header = None
    tensor = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3:
                raise TensorError(f"line {lineno}: header must be 'k n d', got {line!r}")
            try:
                k, n, d = (int(x) for x in parts)
            except ValueError:
                raise TensorError(f"line {lineno}: header must be three integers") from None
            header = (k, n, d)
            tensor = PartialSymmetricTensor(n=n, k=k, d=d)
            continue
        assert tensor is not None
        k = header[0]
        if len(parts) not in (k, k + 1):
            raise TensorError(
                f"line {lineno}: expected {k} indices and an optional value, got {len(parts)} fields"
            )
        try:
            idx = [int(x) for x in parts[:k]]
        except ValueError:
            raise TensorError(f"line {lineno}: indices must be integers") from None
        value = None
        if len(parts) == k + 1 and parts[k] != "?":
            try:
                value = Fraction(parts[k]) if "/" in parts[k] else float(parts[k])
            except (ValueError, ZeroDivisionError):
                raise TensorError(f"line {lineno}: bad value {parts[k]!r}") from None
        try:
            tensor.observe(idx, value)
        except TensorError as exc:
            raise TensorError(f"line {lineno}: {exc}") from None
    if tensor is None:
        raise TensorError("empty tensor file (missing header)")
    return tensor


def load_tensor(path: str) -> PartialSymmetricTensor:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_tensor(fh.read())


def format_tensor(T: PartialSymmetricTensor) -> str:
    lines = [f"{T.k} {T.n} {T.d}"]
    for idx in T.observed_indices:
        value = T.entries[idx]
        tail = "?" if value is None else str(value)
        lines.append(" ".join(str(i) for i in idx) + " " + tail)
    return "\n".join(lines) + "\n"


# -- rigidity bridge ---------------------------------------------------------------


def pattern_to_hypergraph(T: PartialSymmetricTensor) -> Hypergraph:
    """The observation pattern as a k-uniform hypergraph on vertices 1..n.

    Value-independent: tensors with equal observed index sets yield equal
    hypergraphs.
    """
    vertices = [str(i) for i in range(1, T.n + 1)]
    edges = [tuple(str(i) for i in idx) for idx in T.observed_indices]
    return Hypergraph(T.k, vertices, edges)


@dataclass
class CompletabilityReport:
    tensor: dict
    local: dict
    rigidity: RigidityReport
    interpretation: str

    def to_dict(self) -> dict:
        return {
            "tensor": self.tensor,
            "local": self.local,
            "report": self.rigidity.to_dict(),
            "interpretation": self.interpretation,
        }

    @property
    def verdict(self) -> str:
        return self.rigidity.verdict


def analyze_completability(
    T: PartialSymmetricTensor, cfg: EngineConfig = EngineConfig()
) -> CompletabilityReport:
    """Rigidity analysis of the observation pattern at the target rank.

    Globally rigid patterns have a unique generic completion (up to the
    model's scaling symmetries); locally rigid ones have finitely many.
    """
    from .polymap import h_prod, sum_copies

    G = pattern_to_hypergraph(T)
    g = sum_copies(h_prod(T.k), T.d)
    local = is_locally_rigid(g, G, cfg, map_label="prod")
    rep = global_rigidity_prod(G, T.d, cfg)
    if rep.verdict == "globally-rigid":
        interpretation = "unique completion at the target rank (generic)"
    elif local.locally_rigid:
        interpretation = "finitely many completions at the target rank (generic); uniqueness not certified"
    else:
        interpretation = "completions not finitely determined at the target rank (generic)"
    return CompletabilityReport(
        tensor={"n": T.n, "k": T.k, "d": T.d, "observed": len(T.entries)},
        local=local.to_dict(),
        rigidity=rep,
        interpretation=interpretation,
    )


# -- numeric completion ---------------------------------------------------------------


@dataclass
class CompletionResult:
    factors: list[list[float]]  # d x n, row c = factor vector x_c
    residual: float             # max abs error over observed valued entries
    converged: bool
    iterations: int

    def entry(self, idx: Sequence[int]) -> float:
        """Model value at a (1-based) multiset index."""
        val = 0.0
        for row in self.factors:
            term = 1.0
            for i in idx:
                term *= row[i - 1]
            val += term
        return val

    def to_dict(self) -> dict:
        return {
            "factors": self.factors,
            "residual": self.residual,
            "converged": self.converged,
            "iterations": self.iterations,
        }


def _model_residuals(x, indices, values, d, n):
    import numpy as np

    factors = x.reshape(d, n)
    out = np.empty(len(indices))
    for r, idx in enumerate(indices):
        acc = 0.0
        for c in range(d):
            term = 1.0
            for i in idx:
                term *= factors[c, i - 1]
            acc += term
        out[r] = acc - values[r]
    return out


def _model_jacobian(x, indices, values, d, n):
    import numpy as np

    factors = x.reshape(d, n)
    J = np.zeros((len(indices), d * n))
    for r, idx in enumerate(indices):
        for c in range(d):
            for pos in range(len(idx)):
                v = idx[pos] - 1
                term = 1.0
                for qpos, i in enumerate(idx):
                    if qpos != pos:
                        term *= factors[c, i - 1]
                J[r, c * n + v] += term
    return J


def fit_completion(
    T: PartialSymmetricTensor,
    seed: int = 0,
    starts: int = 8,
    max_iter: int = 200,
    tol: float = 1e-10,
) -> CompletionResult:
    """Least-squares rank-d factor fit to the observed valued entries.

    Levenberg-style trust-region iterations from `starts` seeded random
    initializations; returns the best run. Float only: the fit is a numeric
    witness, certification comes from the rigidity analysis.
    """
    import numpy as np
    from scipy.optimize import least_squares

    valued = T.valued_entries()
    if not valued:
        raise TensorError("fit requires values")
    indices = sorted(valued)
    values = np.array([valued[idx] for idx in indices])
    d, n = T.d, T.n
    scale = max(float(np.mean(np.abs(values))), 1e-6) ** (1.0 / T.k)

    method = "lm" if len(indices) >= d * n else "trf"  # lm rejects underdetermined fits
    best = None
    total_nfev = 0
    for s in range(starts):
        rng = np.random.default_rng(seed * 1000003 + s)
        x0 = rng.standard_normal(d * n) * scale
        sol = least_squares(
            _model_residuals,
            x0,
            jac=_model_jacobian,
            args=(indices, values, d, n),
            method=method,
            xtol=tol,
            ftol=tol,
            gtol=tol,
            max_nfev=max_iter * (d * n + 1),
        )
        total_nfev += sol.nfev
        resid = float(np.max(np.abs(sol.fun))) if len(sol.fun) else 0.0
        if best is None or resid < best[0]:
            best = (resid, sol)
    assert best is not None
    resid, sol = best
    converged = bool(sol.success)
    return CompletionResult(
        factors=[[float(v) for v in row] for row in sol.x.reshape(d, n)],
        residual=resid,
        converged=converged,
        iterations=total_nfev,
    )
