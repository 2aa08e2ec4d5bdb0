"""Exact dense linear algebra over the rationals and 62-bit prime fields.

Ranks over the rationals use fraction-free Bareiss elimination on a
denominator-cleared integer copy; prime-field ranks use ordinary Gaussian
elimination. Kernel bases are computed from a reduced echelon form and every
returned vector is re-verified against the matrix, so a reported basis is a
certificate, not a hope.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import gmpy2

from .polymap import BadPrimeError, frac_mod


class LinalgError(ValueError):
    pass


class ExactMatrix:
    """A dense matrix of exact rationals (modulus None) or residues mod p.

    Immutable by convention; elimination always runs on private copies.
    Optional row/col labels are carried for debugging output only.
    """

    def __init__(
        self,
        entries: Sequence[Sequence],
        modulus: int | None = None,
        row_labels: Sequence[str] | None = None,
        col_labels: Sequence[str] | None = None,
        cols: int | None = None,
    ):
        rows = [list(r) for r in entries]
        ncols = len(rows[0]) if rows else (cols if cols is not None else 0)
        if any(len(r) != ncols for r in rows):
            raise LinalgError("ragged matrix")
        self.modulus = modulus
        if modulus is None:
            self.entries = [[Fraction(x) for x in r] for r in rows]
        else:
            self.entries = [[int(x) % modulus for x in r] for r in rows]
        self.rows = len(rows)
        self.cols = ncols
        self.row_labels = tuple(row_labels) if row_labels is not None else None
        self.col_labels = tuple(col_labels) if col_labels is not None else None

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus: int | None = None) -> ExactMatrix:
        return cls([[0] * cols for _ in range(rows)], modulus=modulus, cols=cols)

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(
            [[self.entries[r][c] for r in range(self.rows)] for c in range(self.cols)],
            modulus=self.modulus,
            row_labels=self.col_labels,
            col_labels=self.row_labels,
            cols=self.rows,
        )

    def reduce_mod(self, p: int) -> ExactMatrix:
        """Rational matrix reduced mod p; raises BadPrimeError on p | denominator."""
        if self.modulus is not None:
            raise LinalgError("matrix already lives in a prime field")
        return ExactMatrix(
            [[frac_mod(x, p) for x in row] for row in self.entries],
            modulus=p,
            row_labels=self.row_labels,
            col_labels=self.col_labels,
        )

    def mul_vector(self, vec: Sequence) -> list:
        if len(vec) != self.cols:
            raise LinalgError(f"vector length {len(vec)} != cols {self.cols}")
        if self.modulus is None:
            return [sum((Fraction(v) * x for v, x in zip(vec, row)), Fraction(0)) for row in self.entries]
        p = self.modulus
        return [sum(int(v) * x for v, x in zip(vec, row)) % p for row in self.entries]

    def to_tsv(self) -> str:
        head = ""
        if self.col_labels:
            head = "\t" + "\t".join(self.col_labels) + "\n"
        lines = []
        for i, row in enumerate(self.entries):
            lbl = self.row_labels[i] + "\t" if self.row_labels else ""
            lines.append(lbl + "\t".join(str(x) for x in row))
        return head + "\n".join(lines)

    def __repr__(self) -> str:
        dom = "Q" if self.modulus is None else f"GF({self.modulus})"
        return f"ExactMatrix({self.rows}x{self.cols} over {dom})"


def vstack(mats: Sequence[ExactMatrix]) -> ExactMatrix:
    if not mats:
        raise LinalgError("nothing to stack")
    cols = mats[0].cols
    modulus = mats[0].modulus
    for m in mats:
        if m.cols != cols:
            raise LinalgError(f"column mismatch in stack: {m.cols} != {cols}")
        if m.modulus != modulus:
            raise LinalgError("mixed domains in stack")
    rows: list[list] = []
    for m in mats:
        rows.extend(m.entries)
    return ExactMatrix(rows, modulus=modulus, col_labels=mats[0].col_labels)


# -- rank ------------------------------------------------------------------


def _clear_denominators(entries: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in entries:
        scale = 1
        for x in row:
            scale = scale * x.denominator // gcd(scale, x.denominator)
        out.append([int(x * scale) for x in row])
    return out


def _bareiss_rank(m: list[list[int]]) -> int:
    """Fraction-free elimination; row scaling does not change the rank."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    piv = 0
    prev = 1
    for c in range(ncols):
        if piv >= nrows:
            break
        pr = next((r for r in range(piv, nrows) if m[r][c] != 0), None)
        if pr is None:
            continue
        m[piv], m[pr] = m[pr], m[piv]
        pivot = m[piv][c]
        for r in range(piv + 1, nrows):
            mr = m[r]
            mrc = mr[c]
            for cc in range(c + 1, ncols):
                q, rem = divmod(mr[cc] * pivot - mrc * m[piv][cc], prev)
                assert rem == 0, "Bareiss exact-division invariant violated"
                mr[cc] = q
            mr[c] = 0
        prev = pivot
        piv += 1
    return piv


def _modp_rank(m: list[list[int]], p: int) -> int:
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    piv = 0
    for c in range(ncols):
        if piv >= nrows:
            break
        pr = next((r for r in range(piv, nrows) if m[r][c] % p != 0), None)
        if pr is None:
            continue
        m[piv], m[pr] = m[pr], m[piv]
        inv = pow(m[piv][c], -1, p)
        m[piv] = [x * inv % p for x in m[piv]]
        for r in range(piv + 1, nrows):
            f = m[r][c] % p
            if f:
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[piv])]
        piv += 1
    return piv


def rank(M: ExactMatrix) -> int:
    """Exact rank in the matrix's own domain."""
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.modulus is None:
        return _bareiss_rank(_clear_denominators(M.entries))
    return _modp_rank([row[:] for row in M.entries], M.modulus)


# -- kernels -----------------------------------------------------------------


@dataclass(frozen=True)
class KernelBasis:
    """Linearly independent vectors spanning a kernel; count equals its dim."""

    vectors: tuple[tuple, ...]
    ambient: int
    modulus: int | None = None

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


def _rref(entries: list[list], modulus: int | None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    nrows = len(entries)
    ncols = len(entries[0]) if nrows else 0
    m = [row[:] for row in entries]
    pivots: list[int] = []
    piv = 0
    for c in range(ncols):
        if piv >= nrows:
            break
        pr = next((r for r in range(piv, nrows) if m[r][c] != 0), None)
        if pr is None:
            continue
        m[piv], m[pr] = m[pr], m[piv]
        if modulus is None:
            inv = Fraction(1) / m[piv][c]
            m[piv] = [x * inv for x in m[piv]]
        else:
            inv = pow(int(m[piv][c]), -1, modulus)
            m[piv] = [x * inv % modulus for x in m[piv]]
        for r in range(nrows):
            if r != piv and m[r][c] != 0:
                f = m[r][c]
                if modulus is None:
                    m[r] = [x - f * y for x, y in zip(m[r], m[piv])]
                else:
                    m[r] = [(x - f * y) % modulus for x, y in zip(m[r], m[piv])]
        pivots.append(c)
        piv += 1
    return m, pivots


def right_kernel_basis(M: ExactMatrix) -> KernelBasis:
    """Basis of {v : M v = 0}; dim = cols - rank, verified exactly."""
    zero = Fraction(0) if M.modulus is None else 0
    one = Fraction(1) if M.modulus is None else 1
    if M.rows == 0:
        vectors = tuple(
            tuple(one if i == j else zero for j in range(M.cols)) for i in range(M.cols)
        )
        return KernelBasis(vectors, M.cols, M.modulus)
    red, pivots = _rref(M.entries, M.modulus)
    pivot_set = set(pivots)
    free_cols = [c for c in range(M.cols) if c not in pivot_set]
    vectors = []
    for fc in free_cols:
        v = [zero] * M.cols
        v[fc] = one
        for r, pc in enumerate(pivots):
            coeff = red[r][fc]
            v[pc] = -coeff if M.modulus is None else (-coeff) % M.modulus
        vectors.append(tuple(v))
    basis = KernelBasis(tuple(vectors), M.cols, M.modulus)
    _verify_kernel(M, basis, pivots)
    return basis


def left_kernel_basis(M: ExactMatrix) -> KernelBasis:
    """Basis of {w : w^T M = 0}; dim = rows - rank."""
    return right_kernel_basis(M.transpose())


def _verify_kernel(M: ExactMatrix, basis: KernelBasis, pivots: list[int]) -> None:
    # rank + kernel dim must tile the column count, and the rank must agree
    # with the independent elimination used by rank()
    r = rank(M)
    if r != len(pivots) or r + basis.dim != M.cols:
        raise AssertionError(
            f"rank/kernel identity violated: rank={r}, pivots={len(pivots)}, "
            f"kernel dim={basis.dim}, cols={M.cols}"
        )
    for v in basis.vectors:
        if any(x != 0 for x in M.mul_vector(v)):
            raise AssertionError("kernel vector has nonzero residual")


def kernel_intersection(Ms: Sequence[ExactMatrix], ncols: int | None = None) -> KernelBasis:
    """Basis of the intersection of the right kernels of the given matrices.

    Computed as the right kernel of the vertical stack. An empty list is the
    vacuous intersection: the full space, which needs `ncols` to be named.
    """
    mats = list(Ms)
    if not mats:
        if ncols is None:
            raise LinalgError("empty intersection needs an explicit column count")
        return right_kernel_basis(ExactMatrix.zeros(0, ncols))
    if ncols is not None and mats[0].cols != ncols:
        raise LinalgError(f"stated column count {ncols} != matrix columns {mats[0].cols}")
    return right_kernel_basis(vstack(mats))


# -- primes -------------------------------------------------------------------


def random_prime(rng: random.Random) -> int:
    """A fresh prime in (2^61, 2^62) drawn from the given stream."""
    while True:
        cand = rng.randrange(2**61 + 1, 2**62, 2)
        p = int(gmpy2.next_prime(cand))
        if p < 2**62:
            return p


__all__ = [
    "BadPrimeError",
    "ExactMatrix",
    "KernelBasis",
    "LinalgError",
    "kernel_intersection",
    "left_kernel_basis",
    "random_prime",
    "rank",
    "right_kernel_basis",
    "vstack",
]
