from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from convexproc.errors import SplitNotRational
from convexproc.linalg import RationalMatrix as M
from convexproc.polynomial import (
    Polynomial,
    RootLocation,
    char_poly,
    count_nonneg_roots,
    count_real_roots,
    factor_rational,
    nonneg_split,
    rational_roots,
    roots_in_nonneg_reals,
    squarefree_decomposition,
    stable_subspace,
)

x = sympy.Symbol("x")


def _to_sympy(p: Polynomial):
    return sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p.coeffs))


square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)
)
polys = st.lists(st.integers(-6, 6), min_size=2, max_size=7).filter(lambda c: any(c[1:]))


def test_char_poly_2x2_fixture():
    # det(xI - [4 1; 2 3]) = x^2 - 7x + 10 = (x - 2)(x - 5)
    assert char_poly(M([[4, 1], [2, 3]])) == Polynomial((10, -7, 1))


@settings(max_examples=60, deadline=None)
@given(square)
def test_char_poly_matches_sympy(rows):
    ours = char_poly(M(rows))
    theirs = sympy.Matrix(rows).charpoly(x).as_expr()
    assert sympy.expand(_to_sympy(ours) - theirs) == 0


@settings(max_examples=80, deadline=None)
@given(polys)
def test_sturm_counts_match_sympy(coeffs):
    p = Polynomial(coeffs)
    roots = set(sympy.real_roots(_to_sympy(p)))
    assert count_real_roots(p) == len(roots)
    assert count_nonneg_roots(p) == len([r for r in roots if r >= 0])
    assert count_real_roots(p, 0, 1) == len([r for r in roots if 0 < r <= 1])


@settings(max_examples=60, deadline=None)
@given(polys)
def test_factorization_reconstructs(coeffs):
    p = Polynomial(coeffs)
    fs = factor_rational(p)
    prod = Polynomial((p.lead,))
    for f, m in fs:
        prod = prod * f**m
    assert prod == p
    sym = sympy.factor_list(_to_sympy(p), x, domain="QQ")[1]
    assert sorted(int(sympy.degree(f, x)) for f, m in sym for _ in range(m)) == sorted(
        f.degree for f, m in fs for _ in range(m)
    )


def test_squarefree_decomposition():
    p = Polynomial.from_roots(1, 1, 2, 3, 3, 3)
    parts = squarefree_decomposition(p)
    assert parts == [(Polynomial.from_roots(2), 1), (Polynomial.from_roots(1), 2), (Polynomial.from_roots(3), 3)]


def test_rational_roots():
    assert sorted(rational_roots(Polynomial.from_roots(F(1, 2), -3, 0))) == [-3, 0, F(1, 2)]
    assert rational_roots(Polynomial((-2, 0, 1))) == []


def test_root_location_classes():
    # x^2 + 1 : no real root; x - 2 : in; x + 1 : out; x^2 - 2 : mixed; x : zero counts as in
    got = {f: loc for f, _, loc in roots_in_nonneg_reals(Polynomial((1, 0, 1)) * Polynomial((-2, 1)) * Polynomial((1, 1)))}
    assert got[Polynomial((1, 0, 1))] is RootLocation.NONE_IN
    assert got[Polynomial((-2, 1))] is RootLocation.ALL_IN
    assert got[Polynomial((1, 1))] is RootLocation.NONE_IN
    assert roots_in_nonneg_reals(Polynomial((0, 1)))[0][2] is RootLocation.ALL_IN
    assert roots_in_nonneg_reals(Polynomial((-2, 0, 1)))[0][2] is RootLocation.MIXED
    # x^2 - 4x + 2 is irreducible with roots 2 +- sqrt 2, both positive
    assert roots_in_nonneg_reals(Polynomial((2, -4, 1)))[0][2] is RootLocation.ALL_IN


def test_nonneg_split_and_mixed_raises():
    good, bad = nonneg_split(Polynomial.from_roots(-1, 2, 0) * Polynomial((1, 0, 1)))
    assert good == Polynomial.from_roots(-1) * Polynomial((1, 0, 1))
    assert bad == Polynomial.from_roots(2, 0)
    with pytest.raises(SplitNotRational):
        nonneg_split(Polynomial((-2, 0, 1)))


def test_stable_subspace_diagonal():
    a = M([[-1, 0, 0], [0, 2, 0], [0, 0, 0]])
    assert stable_subspace(a).basis == ((1, 0, 0),)


def test_large_degree_goes_through_sympy():
    # (x^2 + x + 1)(x^2 - 3) : degree 4 with no rational root
    p = Polynomial((1, 1, 1)) * Polynomial((-3, 0, 1))
    fs = factor_rational(p)
    assert sorted(f.coeffs for f, _ in fs) == sorted([Polynomial((1, 1, 1)).coeffs, Polynomial((-3, 0, 1)).coeffs])
