from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from rigidcheck import (
    BadPrimeError,
    EvalDomain,
    PolyMap,
    PolyMapError,
    PolyParseError,
    h_prod,
    inner_product,
    parse_poly,
    sq_euclid,
    sum_copies,
)
from rigidcheck.linalg import random_prime
from conftest import rand_frac

EXACT = EvalDomain.exact()


def test_h_prod_eval():
    xa, xb = Fraction(2, 3), Fraction(5, 7)
    assert h_prod(3).eval([(xa,), (xa,), (xb,)], EXACT) == xa**2 * xb
    assert h_prod(2).eval([(3,), (5,)], EXACT) == 15
    assert h_prod(4).eval([(xa,)] * 4, EXACT) == xa**4
    assert h_prod(4).eval([(2,), (2,), (2,), (3,)], EXACT) == 24


def test_sq_euclid_eval():
    xa, xb = Fraction(1, 2), Fraction(1, 3)
    assert sq_euclid(1).eval([(xa,), (xb,)], EXACT) == (xa - xb) ** 2 == Fraction(1, 36)
    assert sq_euclid(2).eval([(0, 0), (1, 1)], EXACT) == 2
    assert sq_euclid(2).eval([(3, 4), (3, 4)], EXACT) == 0


def test_inner_product_eval():
    assert inner_product(2).eval([(1, 0), (0, 1)], EXACT) == 0
    a, b = Fraction(2, 5), Fraction(7, 3)
    assert inner_product(1).eval([(a,), (b,)], EXACT) == a * b
    y = [[Fraction(i + 1, j + 2) for j in range(3)] for i in range(2)]
    expect = sum(y[0][j] * y[1][j] for j in range(3))
    assert inner_product(3).eval(y, EXACT) == expect


def test_builtin_symmetry_flags():
    assert h_prod(3).symmetry == "symmetric"
    assert sq_euclid(2).symmetry == "symmetric"
    assert inner_product(4).symmetry == "symmetric"


def test_sum_copies_identities():
    assert sum_copies(sq_euclid(1), 2) == sq_euclid(2)
    h = h_prod(3)
    assert sum_copies(h, 1) is h
    g = sum_copies(h_prod(3), 2)
    # value on a block-stacked point is the sum of per-block values
    pts = [(1, 5), (2, 6), (3, 7)]
    assert g.eval(pts, EXACT) == 1 * 2 * 3 + 5 * 6 * 7


def test_sum_copies_blockwise_property():
    rng = random.Random(1)
    h = parse_poly("x1_1^2*x2_2 - 3*x2_1", 2, 2)
    for t in (2, 3):
        g = sum_copies(h, t)
        for _ in range(10):
            blocks = [[rand_frac(rng) for _ in range(2)] for _ in range(2 * t)]
            stacked = [
                tuple(x for c in range(t) for x in blocks[arg * t + c]) for arg in range(2)
            ]
            expect = sum(
                h.eval([blocks[0 * t + c], blocks[1 * t + c]], EXACT) for c in range(t)
            )
            assert g.eval(stacked, EXACT) == expect


def test_partial_examples():
    # d/dx of x^3 is 3 x^2
    g = parse_poly("x1_1^3", 1, 1)
    assert g.partial(1, 1) == parse_poly("3*x1_1^2", 1, 1)
    # d/dy of x^3 y is x^3
    g2 = parse_poly("x1_1^3*x2_1", 2, 1)
    assert g2.partial(2, 1) == parse_poly("x1_1^3", 2, 1)
    const = parse_poly("7/2", 1, 1)
    assert const.partial(1, 1).is_zero()


def test_partial_degree_property():
    # exact degree drop for homogeneous maps; never more than a drop of one
    for g in (h_prod(4), sq_euclid(3), inner_product(2), parse_poly("x1_1^4 - 2*x1_2^2*x2_1^2", 2, 2)):
        for arg in range(1, g.k + 1):
            for coord in range(1, g.d + 1):
                p = g.partial(arg, coord)
                if g.is_homogeneous():
                    assert p.is_zero() or p.total_degree() == g.total_degree() - 1
                else:
                    assert p.is_zero() or p.total_degree() <= g.total_degree() - 1


def test_parse_builtins():
    assert parse_poly("x1_1*x2_1*x3_1", 3, 1) == h_prod(3)
    assert parse_poly("(x1_1-x2_1)^2", 2, 1) == sq_euclid(1)
    assert parse_poly("x1_1*x2_1 + x1_2*x2_2", 2, 2) == inner_product(2)


def test_parse_antisymmetric_detection():
    g = parse_poly("x1_1*x2_2 - x1_2*x2_1", 2, 2)
    assert g.symmetry == "antisymmetric"
    # independent oracle: exact block-swap negation at random rational points
    rng = random.Random(3)
    for _ in range(20):
        a = [rand_frac(rng), rand_frac(rng)]
        b = [rand_frac(rng), rand_frac(rng)]
        assert g.eval([a, b], EXACT) == -g.eval([b, a], EXACT)


def test_parse_symmetry_none():
    g = parse_poly("x1_1^2*x2_1", 2, 1)
    assert g.symmetry == "none"


def test_parse_rational_literals_and_unary_minus():
    g = parse_poly("-1/2*x1_1 + 3", 1, 1)
    assert g.eval([(Fraction(4),)], EXACT) == 1


def test_parse_errors_have_positions():
    with pytest.raises(PolyParseError, match="position 5"):
        parse_poly("x1_1*", 1, 1)
    with pytest.raises(PolyParseError, match="out of range"):
        parse_poly("x3_1", 2, 1)
    with pytest.raises(PolyParseError, match="out of range"):
        parse_poly("x1_2", 1, 1)
    with pytest.raises(PolyParseError, match="nonnegative integer"):
        parse_poly("x1_1^(2)", 1, 1)
    with pytest.raises(PolyParseError, match="nonnegative integer"):
        parse_poly("x1_1^1/2", 1, 1)
    with pytest.raises(PolyParseError, match="unexpected character"):
        parse_poly("x1_1 & x1_1", 1, 1)
    with pytest.raises(PolyParseError):
        parse_poly("(x1_1", 1, 1)


def test_eval_modp_matches_exact():
    rng = random.Random(4)
    maps = [h_prod(3), sq_euclid(2), inner_product(2), parse_poly("1/3*x1_1^2 - x2_1*x1_1", 2, 1)]
    for trial in range(100):
        g = maps[trial % len(maps)]
        p = random_prime(rng)
        dom = EvalDomain.modp(p)
        args = [[rand_frac(rng) for _ in range(g.d)] for _ in range(g.k)]
        exact = g.eval(args, EXACT)
        expect = exact.numerator % p * pow(exact.denominator % p, -1, p) % p
        assert g.eval(args, dom) == expect


def test_eval_modp_bad_prime():
    rng = random.Random(5)
    p = random_prime(rng)
    g = PolyMap(1, 1, {(1,): Fraction(1, p)})
    with pytest.raises(BadPrimeError):
        g.eval([(2,)], EvalDomain.modp(p))


def test_symmetric_eval_invariant_under_permutation():
    rng = random.Random(6)
    for g in (h_prod(4), sq_euclid(3)):
        for _ in range(10):
            args = [[rand_frac(rng) for _ in range(g.d)] for _ in range(g.k)]
            base = g.eval(args, EXACT)
            perm = list(range(g.k))
            rng.shuffle(perm)
            assert g.eval([args[i] for i in perm], EXACT) == base


def test_partial_matches_finite_differences():
    # float64 diagnostics: central differences at 50 points per built-in map
    rng = random.Random(7)
    h = 1e-6
    for g in (h_prod(3), sq_euclid(2), inner_product(3)):
        worst = 0.0
        for _ in range(50):
            args = [[rng.uniform(0.5, 2.0) * rng.choice([-1, 1]) for _ in range(g.d)] for _ in range(g.k)]
            arg = rng.randrange(g.k) + 1
            coord = rng.randrange(g.d) + 1
            exact = float(g.partial(arg, coord).eval(args, EXACT))
            hi = [list(a) for a in args]
            lo = [list(a) for a in args]
            hi[arg - 1][coord - 1] += h
            lo[arg - 1][coord - 1] -= h
            fd = (g.eval(hi, EvalDomain.float64()) - g.eval(lo, EvalDomain.float64())) / (2 * h)
            denom = max(1.0, abs(exact))
            worst = max(worst, abs(fd - exact) / denom)
        assert worst <= 1e-6


def test_structure_predicates():
    assert h_prod(3).is_multilinear()
    assert inner_product(3).is_multilinear()
    assert not sq_euclid(2).is_multilinear()
    assert not parse_poly("x1_1*x1_2", 1, 2).is_multilinear()  # block degree 2
    assert h_prod(5).is_homogeneous()
    assert sq_euclid(3).is_homogeneous()
    assert not parse_poly("x1_1^2 + x1_1", 1, 1).is_homogeneous()


def test_no_zero_coefficients_after_normalization():
    g = parse_poly("x1_1 - x1_1", 1, 1)
    assert g.is_zero()
    assert g.terms == {}


def test_domain_validation():
    with pytest.raises(PolyMapError):
        EvalDomain("modp", 97)  # too small
    with pytest.raises(PolyMapError):
        EvalDomain("modp", 2**61 + 1)  # not prime
    with pytest.raises(PolyMapError):
        EvalDomain("weird")
    with pytest.raises(PolyMapError):
        EvalDomain("exact", 11)
