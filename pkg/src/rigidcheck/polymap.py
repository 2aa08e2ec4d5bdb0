"""Polynomial maps g: (F^d)^k -> F with exact coefficients.

A map takes k vector arguments of dimension d. Terms are stored sparsely as
{exponent tuple over the k*d flattened variables: rational coefficient};
variable (arg i, coord j) sits at flat index i*d + j (0-based). Coefficients
stay exact rationals; float evaluation exists for diagnostics only.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import gmpy2

Terms = dict[tuple[int, ...], Fraction]

# fixed 62-bit prime for the internal symmetry probe
_SYMMETRY_PRIME = int(gmpy2.next_prime(2**61 + 2**40))
_SYMMETRY_TRIALS = 20


class PolyMapError(ValueError):
    pass


class BadPrimeError(ArithmeticError):
    """A coefficient denominator vanished mod p; resample the prime."""


@dataclass(frozen=True)
class EvalDomain:
    """Where to evaluate: exact rationals, a 62-bit prime field, or float64.

    Prime fields are for randomized rank certification; float64 is
    diagnostic only and never feeds a verdict.
    """

    kind: str  # "exact" | "modp" | "float64"
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("exact", "modp", "float64"):
            raise PolyMapError(f"unknown evaluation domain kind {self.kind!r}")
        if self.kind == "modp":
            if self.p is None or self.p <= 2**61 or not gmpy2.is_prime(self.p):
                raise PolyMapError("prime-field domain needs a prime p > 2^61")
        elif self.p is not None:
            raise PolyMapError(f"domain {self.kind} takes no modulus")

    @classmethod
    def exact(cls) -> EvalDomain:
        return cls("exact")

    @classmethod
    def modp(cls, p: int) -> EvalDomain:
        return cls("modp", p)

    @classmethod
    def float64(cls) -> EvalDomain:
        return cls("float64")


def frac_mod(x: Fraction | int, p: int) -> int:
    """Reduce an exact rational mod p. Raises BadPrimeError if p | denominator."""
    if isinstance(x, int):
        return x % p
    num, den = x.numerator, x.denominator
    if den % p == 0:
        raise BadPrimeError("bad prime, resample")
    return num % p * pow(den % p, -1, p) % p


def _normalize(terms: Mapping[tuple[int, ...], Fraction | int], nvars: int) -> Terms:
    out: Terms = {}
    for exp, coeff in terms.items():
        exp = tuple(int(x) for x in exp)
        if len(exp) != nvars or any(x < 0 for x in exp):
            raise PolyMapError(f"bad exponent vector {exp} for {nvars} variables")
        c = Fraction(coeff)
        if c == 0:
            continue
        out[exp] = out.get(exp, Fraction(0)) + c
    return {e: c for e, c in out.items() if c != 0}


class PolyMap:
    """A polynomial map g: (F^d)^k -> F, immutable.

    `symmetry` is one of "symmetric", "antisymmetric", "none"; when not
    supplied it is detected by randomized argument-swap probes over a prime
    field (error probability < 2^-40 over 20 trials).
    """

    def __init__(self, k: int, d: int, terms: Mapping[tuple[int, ...], Fraction | int],
                 symmetry: str | None = None):
        if k < 1 or d < 1:
            raise PolyMapError(f"need k >= 1 and d >= 1, got k={k}, d={d}")
        self.k = k
        self.d = d
        self.terms: Terms = _normalize(terms, k * d)
        if symmetry is None:
            symmetry = _detect_symmetry(self.terms, k, d)
        if symmetry not in ("symmetric", "antisymmetric", "none"):
            raise PolyMapError(f"unknown symmetry flag {symmetry!r}")
        self.symmetry = symmetry

    # -- structure ---------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self.k * self.d

    def var(self, arg: int, coord: int) -> int:
        """Flat variable index for 1-based (argument, coordinate)."""
        if not (1 <= arg <= self.k) or not (1 <= coord <= self.d):
            raise PolyMapError(f"variable x{arg}_{coord} out of range for (k={self.k}, d={self.d})")
        return (arg - 1) * self.d + (coord - 1)

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Largest term degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def is_multilinear(self) -> bool:
        """True when every term is degree exactly 1 in every argument block."""
        for exp in self.terms:
            for i in range(self.k):
                if sum(exp[i * self.d : (i + 1) * self.d]) != 1:
                    return False
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyMap)
            and (self.k, self.d) == (other.k, other.d)
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        return f"PolyMap(k={self.k}, d={self.d}, terms={len(self.terms)}, {self.symmetry})"

    # -- calculus ------------------------------------------------------------

    def partial(self, arg: int, coord: int) -> PolyMap:
        """Exact partial derivative d/dx[arg][coord], 1-based indices."""
        v = self.var(arg, coord)
        out: Terms = {}
        for exp, coeff in self.terms.items():
            m = exp[v]
            if m == 0:
                continue
            nexp = exp[:v] + (m - 1,) + exp[v + 1 :]
            out[nexp] = out.get(nexp, Fraction(0)) + coeff * m
        return PolyMap(self.k, self.d, out, symmetry="none" if out else self.symmetry)

    def eval(self, args: Sequence[Sequence], domain: EvalDomain = EvalDomain("exact")):
        """Evaluate at k points of F^d in the requested domain."""
        if len(args) != self.k or any(len(a) != self.d for a in args):
            raise PolyMapError(f"expected {self.k} points of dimension {self.d}")
        flat = [x for a in args for x in a]
        if domain.kind == "exact":
            total = Fraction(0)
            for exp, coeff in self.terms.items():
                val = coeff
                for x, e in zip(flat, exp):
                    if e:
                        val *= Fraction(x) ** e
                total += val
            return total
        if domain.kind == "modp":
            p = domain.p
            assert p is not None
            vals = [frac_mod(Fraction(x), p) for x in flat]
            total = 0
            for exp, coeff in self.terms.items():
                val = frac_mod(coeff, p)
                for x, e in zip(vals, exp):
                    if e:
                        val = val * pow(x, e, p) % p
                total = (total + val) % p
            return total
        total_f = 0.0
        for exp, coeff in self.terms.items():
            val = float(coeff)
            for x, e in zip(flat, exp):
                if e:
                    val *= float(x) ** e
            total_f += val
        return total_f


# -- construction helpers ------------------------------------------------------


def _unit_exp(nvars: int, positions: Sequence[int]) -> tuple[int, ...]:
    exp = [0] * nvars
    for pos in positions:
        exp[pos] += 1
    return tuple(exp)


def h_prod(k: int) -> PolyMap:
    """The product map (x_1, ..., x_k) -> x_1 x_2 ... x_k on scalars (d=1)."""
    if k < 1:
        raise PolyMapError("h_prod needs k >= 1")
    return PolyMap(k, 1, {_unit_exp(k, range(k)): Fraction(1)}, symmetry="symmetric")


def sq_euclid(d: int) -> PolyMap:
    """Squared Euclidean distance sum_j (x_1j - x_2j)^2 (k=2)."""
    if d < 1:
        raise PolyMapError("sq_euclid needs d >= 1")
    terms: Terms = {}
    for j in range(d):
        terms[_unit_exp(2 * d, (j, j))] = Fraction(1)
        terms[_unit_exp(2 * d, (j, d + j))] = Fraction(-2)
        terms[_unit_exp(2 * d, (d + j, d + j))] = Fraction(1)
    return PolyMap(2, d, terms, symmetry="symmetric")


def inner_product(d: int) -> PolyMap:
    """Euclidean inner product sum_j x_1j x_2j (k=2)."""
    if d < 1:
        raise PolyMapError("inner_product needs d >= 1")
    terms = {_unit_exp(2 * d, (j, d + j)): Fraction(1) for j in range(d)}
    return PolyMap(2, d, terms, symmetry="symmetric")


def sum_copies(h: PolyMap, t: int) -> PolyMap:
    """Sum of t copies of h acting on disjoint coordinate blocks.

    The result has d = t * h.d; copy c sees coordinates [c*h.d, (c+1)*h.d)
    of every argument.
    """
    if t < 1:
        raise PolyMapError("sum_copies needs t >= 1")
    if t == 1:
        return h
    k, s = h.k, h.d
    d = t * s
    terms: Terms = {}
    for c in range(t):
        for exp, coeff in h.terms.items():
            nexp = [0] * (k * d)
            for i in range(k):
                for j in range(s):
                    nexp[i * d + c * s + j] = exp[i * s + j]
            key = tuple(nexp)
            terms[key] = terms.get(key, Fraction(0)) + coeff
    return PolyMap(k, d, terms, symmetry=h.symmetry)


# -- symmetry detection --------------------------------------------------------


def _swap_args(point: list[int], i: int, j: int, k: int, d: int) -> list[int]:
    out = list(point)
    out[i * d : (i + 1) * d], out[j * d : (j + 1) * d] = (
        point[j * d : (j + 1) * d],
        point[i * d : (i + 1) * d],
    )
    return out


def _eval_flat_mod(terms: Terms, flat: Sequence[int], p: int) -> int:
    total = 0
    for exp, coeff in terms.items():
        val = frac_mod(coeff, p)
        for x, e in zip(flat, exp):
            if e:
                val = val * pow(x, e, p) % p
        total = (total + val) % p
    return total


def _detect_symmetry(terms: Terms, k: int, d: int) -> str:
    """Classify swap behaviour by Schwartz-Zippel probing over a prime field.

    Seeded from the canonical term list, so detection is a pure function of
    the polynomial.
    """
    if k == 1 or not terms:
        return "symmetric"
    p = _SYMMETRY_PRIME
    while any(c.denominator % p == 0 for c in terms.values()):
        p = int(gmpy2.next_prime(p + 1))
    fingerprint = ",".join(f"{e}:{c}" for e, c in sorted(terms.items()))
    rng = random.Random("rigidcheck.symmetry:" + fingerprint)
    all_equal = True
    all_negated = True
    for _ in range(_SYMMETRY_TRIALS):
        point = [rng.randrange(1, p) for _ in range(k * d)]
        i = rng.randrange(k)
        j = rng.randrange(k - 1)
        if j >= i:
            j += 1
        base = _eval_flat_mod(terms, point, p)
        swapped = _eval_flat_mod(terms, _swap_args(point, i, j, k, d), p)
        if swapped != base:
            all_equal = False
        if swapped != (-base) % p:
            all_negated = False
        if not all_equal and not all_negated:
            return "none"
    if all_equal:
        return "symmetric"
    return "antisymmetric"


# -- parser ---------------------------------------------------------------------


class PolyParseError(PolyMapError):
    """Syntax or range error in a polynomial expression, with position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOK_NUM = "num"
_TOK_VAR = "var"
_TOK_OP = "op"
_TOK_END = "end"


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    toks: list[tuple[str, object, int]] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "+-*^()":
            toks.append((_TOK_OP, c, i))
            i += 1
            continue
        if c.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            num = int(text[start:i])
            if i < n and text[i] == "/":
                j = i + 1
                if j >= n or not text[j].isdigit():
                    raise PolyParseError("expected denominator after '/'", i)
                i = j
                while i < n and text[i].isdigit():
                    i += 1
                den = int(text[j:i])
                if den == 0:
                    raise PolyParseError("zero denominator", j)
                toks.append((_TOK_NUM, Fraction(num, den), start))
            else:
                toks.append((_TOK_NUM, Fraction(num), start))
            continue
        if c == "x":
            start = i
            i += 1
            j = i
            while i < n and text[i].isdigit():
                i += 1
            if i == j:
                raise PolyParseError("expected argument index after 'x'", start)
            arg = int(text[j:i])
            if i >= n or text[i] != "_":
                raise PolyParseError("expected '_' in variable name", i if i < n else start)
            i += 1
            j = i
            while i < n and text[i].isdigit():
                i += 1
            if i == j:
                raise PolyParseError("expected coordinate index after '_'", start)
            coord = int(text[j:i])
            toks.append((_TOK_VAR, (arg, coord), start))
            continue
        raise PolyParseError(f"unexpected character {c!r}", i)
    toks.append((_TOK_END, None, n))
    return toks


class _Parser:
    """Recursive descent over: expr := [+|-] term ((+|-) term)*;
    term := factor (* factor)*; factor := atom (^ INT)?;
    atom := NUMBER | VAR | ( expr )."""

    def __init__(self, text: str, k: int, d: int):
        self.toks = _tokenize(text)
        self.pos = 0
        self.k = k
        self.d = d
        self.nvars = k * d

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> Terms:
        terms = self.expr()
        kind, _, at = self.peek()
        if kind != _TOK_END:
            raise PolyParseError("unexpected trailing input", at)
        return terms

    def expr(self) -> Terms:
        sign = 1
        kind, val, _ = self.peek()
        if kind == _TOK_OP and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = _scale(self.term(), sign)
        while True:
            kind, val, _ = self.peek()
            if kind == _TOK_OP and val in "+-":
                self.take()
                rhs = self.term()
                acc = _add(acc, _scale(rhs, -1 if val == "-" else 1))
            else:
                return acc

    def term(self) -> Terms:
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == _TOK_OP and val == "*":
                self.take()
                acc = _mul(acc, self.factor(), self.nvars)
            else:
                return acc

    def factor(self) -> Terms:
        base = self.atom()
        kind, val, at = self.peek()
        if kind == _TOK_OP and val == "^":
            self.take()
            kind, val, at = self.take()
            if kind != _TOK_NUM or not isinstance(val, Fraction) or val.denominator != 1:
                raise PolyParseError("exponent must be a nonnegative integer literal", at)
            e = int(val)
            if e < 0:
                raise PolyParseError("exponent must be nonnegative", at)
            return _power(base, e, self.nvars)
        return base

    def atom(self) -> Terms:
        kind, val, at = self.take()
        if kind == _TOK_NUM:
            assert isinstance(val, Fraction)
            return {} if val == 0 else {tuple([0] * self.nvars): val}
        if kind == _TOK_VAR:
            arg, coord = val  # type: ignore[misc]
            if not (1 <= arg <= self.k) or not (1 <= coord <= self.d):
                raise PolyParseError(
                    f"variable x{arg}_{coord} out of range for (k={self.k}, d={self.d})", at
                )
            return {_unit_exp(self.nvars, [(arg - 1) * self.d + (coord - 1)]): Fraction(1)}
        if kind == _TOK_OP and val == "(":
            inner = self.expr()
            kind, val, at = self.take()
            if kind != _TOK_OP or val != ")":
                raise PolyParseError("expected ')'", at)
            return inner
        raise PolyParseError("expected number, variable, or '('", at)


def _add(a: Terms, b: Terms) -> Terms:
    out = dict(a)
    for exp, c in b.items():
        s = out.get(exp, Fraction(0)) + c
        if s == 0:
            out.pop(exp, None)
        else:
            out[exp] = s
    return out


def _scale(a: Terms, s: int) -> Terms:
    if s == 1:
        return a
    return {e: c * s for e, c in a.items()}


def _mul(a: Terms, b: Terms, nvars: int) -> Terms:
    out: Terms = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            exp = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(exp, Fraction(0)) + ca * cb
            if s == 0:
                out.pop(exp, None)
            else:
                out[exp] = s
    return out


def _power(a: Terms, e: int, nvars: int) -> Terms:
    acc: Terms = {tuple([0] * nvars): Fraction(1)}
    for _ in range(e):
        acc = _mul(acc, a, nvars)
    return acc


def parse_poly(text: str, k: int, d: int) -> PolyMap:
    """Parse a sparse polynomial in variables x<i>_<j> (1-based arg/coord).

    Grammar: rational literals `n` or `n/m`, operators + - * ^ with `^`
    taking a nonnegative integer literal, and parentheses. The symmetry flag
    of the result is auto-detected.
    """
    if k < 1 or d < 1:
        raise PolyMapError(f"need k >= 1 and d >= 1, got k={k}, d={d}")
    terms = _Parser(text, k, d).parse()
    return PolyMap(k, d, terms, symmetry=None)
