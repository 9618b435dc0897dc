import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexproc.cones import (
    PolyhedralCone as PC,
    Polyhedron,
    cone_product,
    dd_convert,
    intersect,
    linear_image,
    minkowski_sum,
    polar,
    preimage,
)
from convexproc.errors import DimensionError
from convexproc.linalg import RationalMatrix as M, Subspace
from convexproc.simplex import solve_lp
from randgen import cones, random_cone


def lp_member(rays, lins, x) -> bool:
    """Independent membership test: is x a conic combination of the given generators?"""
    nv = len(rays) + len(lins)
    eq = [([F(r[i]) for r in rays] + [F(l[i]) for l in lins], x[i]) for i in range(len(x))]
    return solve_lp(nv, eq=eq, nonneg=range(len(rays))).status == "optimal"


def test_orthant_facets():
    assert PC.orthant(2).ineqs == ((0, 1), (1, 0))


def test_halfplane_canonical_form():
    k = PC.from_constraints(2, ineqs=[(1, -1)])
    assert k.rays == ((0, -1),)
    assert k.lineality == Subspace(2, [(1, 1)])
    # same set as the ray (1, -1) plus the line
    assert k == PC.from_generators(2, rays=[(1, -1)], lineality=[(1, 1)])


def test_interval_graph_facets():
    g = PC.from_generators(2, rays=[(1, F(1, 2)), (1, 2)])
    assert g.ineqs == ((-1, 2), (2, -1))


def test_square_pyramid_facets():
    c = PC.from_generators(3, rays=[(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1)])
    assert c.ineqs == ((-1, 0, 1), (0, -1, 1), (0, 1, 1), (1, 0, 1))
    assert c.is_pointed()


def test_redundant_generators_dropped():
    c = PC.from_generators(2, rays=[(1, 0), (0, 1), (1, 1), (2, 3)])
    assert c == PC.orthant(2)
    assert len(c.rays) == 2


def test_polar_examples():
    k = PC.from_constraints(2, ineqs=[(1, -1)])
    assert polar(k) == PC.from_generators(2, rays=[(-1, 1)])
    assert polar(PC.full(3)) == PC.zero(3)
    assert polar(PC.orthant(2)) == PC.from_generators(2, rays=[(-1, 0), (0, -1)])


def test_sum_and_intersection():
    s = minkowski_sum(PC.from_generators(2, rays=[(1, 0)]), PC.from_generators(2, rays=[(-1, 0)]))
    assert s.is_subspace() and s.lineality == Subspace(2, [(1, 0)])
    k = PC.from_constraints(2, ineqs=[(1, -1)])
    line = PC.from_constraints(2, eqs=[(1, 1)])
    assert intersect(k, line) == PC.from_generators(2, rays=[(1, -1)])


def test_image_preimage_product():
    c = PC.orthant(2)
    swap = M([[0, 1], [1, 0]])
    assert linear_image(swap, c) == c
    assert preimage(M([[1, 1]]), PC.orthant(1)) == PC.from_constraints(2, ineqs=[(1, 1)])
    p = cone_product(PC.orthant(1), PC.full(1))
    assert p == PC.from_generators(2, rays=[(1, 0)], lineality=[(0, 1)])


def test_predicates():
    assert PC.zero(2).is_trivial() and PC.zero(2).nonzero_element() is None
    assert PC.full(2).is_full() and PC.full(2).is_subspace()
    assert not PC.orthant(2).is_subspace()


def test_dimension_errors():
    with pytest.raises(DimensionError):
        intersect(PC.orthant(2), PC.orthant(3))
    with pytest.raises(DimensionError):
        PC.from_generators(2, rays=[(1, 2, 3)])
    with pytest.raises(DimensionError):
        PC.orthant(2).contains((1,))


def test_polyhedron_point_and_sum():
    a = Polyhedron.point((1, 2))
    b = Polyhedron.point((3, -1))
    assert (a + b) == Polyhedron.point((4, 1))
    assert (a + Polyhedron.empty(2)).is_empty()
    assert a.contains((1, 2)) and not a.contains((1, 3))


@settings(max_examples=80, deadline=None)
@given(cones(max_dim=4), st.data())
def test_h_rep_agrees_with_lp_membership(c, data):
    kind, first, second = c.available_rep()
    if kind == "V":
        rays, lins = list(first), list(second)
    else:
        rays, lins = list(c.rays), list(c.lineality.basis)
    pts = data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=c.dim, max_size=c.dim), min_size=1, max_size=5))
    for p in pts:
        assert c.contains(p) == lp_member(rays, lins, p)
    for r in rays:
        assert c.contains(r)


@settings(max_examples=60, deadline=None)
@given(cones(max_dim=4), cones(max_dim=4))
def test_intersection_below_and_sum_above(c1, c2):
    if c1.dim != c2.dim:
        return
    i = intersect(c1, c2)
    assert i <= c1 and i <= c2
    s = minkowski_sum(c1, c2)
    assert c1 <= s and c2 <= s


@settings(max_examples=60, deadline=None)
@given(cones(max_dim=4))
def test_polar_reverses_duality(c):
    p = polar(c)
    assert all(sum(F(a) * b for a, b in zip(g, h)) <= 0 for g in c.generators() for h in p.generators())
    assert p.lin() == c.Lin().perp()


def test_dd_convert_keeps_both():
    rng = random.Random(1)
    for _ in range(20):
        c = random_cone(rng, 3)
        d = dd_convert(c)
        assert d == c and d._v is not None and d._h is not None
