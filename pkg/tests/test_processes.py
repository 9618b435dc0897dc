import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from convexproc import fixtures
from convexproc.cones import PolyhedralCone as PC, Polyhedron, intersect, linear_image
from convexproc.errors import DimensionError
from convexproc.linalg import RationalMatrix as M, Subspace
from convexproc.processes import (
    ConvexProcess,
    at_zero,
    compose,
    domain,
    dual,
    image,
    image_of_point,
    image_of_set,
    inverse,
    is_eigenpair,
    is_n_dim_linear,
    is_weakly_invariant,
    kernel,
    maximal_linear,
    minimal_linear,
    power,
    reduce,
    restrict,
    shift,
)
from randgen import processes, random_process

H = fixtures.process("example_interval")
H2, K2 = fixtures.pair("example_2x2")


def interval(lo, hi):
    """The polyhedron [lo, hi] in Q^1 as a homogenized cone."""
    return Polyhedron(PC.from_generators(2, rays=[(1, lo), (1, hi)]))


def test_interval_values():
    assert image_of_point(H, (1,)) == interval(F(1, 2), 2)
    assert image_of_point(H, (4,)) == interval(2, 8)
    assert image_of_point(H, (-1,)).is_empty()
    assert image_of_point(H, (0,)) == Polyhedron.point((0,))


def test_dual_of_interval_matches_displayed_formula():
    # H^-(x) = [2x, inf) for x >= 0 and [x/2, inf) for x < 0
    expected = PC.from_generators(2, rays=[(1, 2), (-1, F(-1, 2))])
    assert dual(H).graph == expected
    hd = dual(H)
    assert hd.contains_pair((1,), (2,)) and not hd.contains_pair((1,), (F(19, 10),))
    assert hd.contains_pair((-2,), (-1,)) and not hd.contains_pair((-2,), (F(-11, 10),))


def test_power_of_interval():
    # [x/2, 2x] composed with itself is [x/4, 4x]
    assert power(H, 2).graph == PC.from_generators(2, rays=[(1, F(1, 4)), (1, 4)])
    assert power(H, 0) == ConvexProcess.identity(1)


def test_inverse_and_shift():
    assert inverse(H).graph == PC.from_generators(2, rays=[(F(1, 2), 1), (2, 1)])
    assert inverse(inverse(H)) == H
    assert shift(shift(H, 3), -3) == H


def test_domain_image_kernel():
    assert domain(H) == PC.orthant(1)
    assert image(H) == PC.orthant(1)
    assert kernel(H) == PC.zero(1)
    assert at_zero(H) == PC.zero(1)


def test_example_2x2_values():
    # H(x) = Ax - K with A = [4 1; 2 3], K = {a >= b}
    assert at_zero(H2) == PC.from_generators(2, rays=[(0, 1)], lineality=[(1, 1)])
    assert image_of_point(H2, (1, 0)).contains((4, 2))
    assert image_of_point(H2, (1, 0)).contains((4, 3))
    assert not image_of_point(H2, (1, 0)).contains((5, 2))
    assert image_of_point(H2, (0, 1)).is_empty()


def test_reduced_2x2_process():
    # on K cap W^perp = ray (1,-1): H_{K,W}(s(1,-1)) = {t(1,-1) : 0 <= t <= 2s}
    w = Subspace(2, [(1, 1)])
    r = reduce(H2, K2, w)
    assert r.graph == PC.from_generators(4, rays=[(1, -1, 0, 0), (1, -1, 2, -2)])
    assert at_zero(r) == PC.zero(2)


def test_restrict():
    hk = restrict(H2, K2)
    assert hk.graph.issubset(H2.graph)
    assert restrict(H, PC.orthant(1)) == H


def test_linear_parts():
    assert minimal_linear(H).graph.dim == 0
    assert maximal_linear(H).graph == Subspace.full(2)
    lm = minimal_linear(H2)
    assert lm.graph == Subspace(4, [(1, 1, 5, 5), (0, 0, 1, 1)])


def test_weak_invariance():
    assert is_weakly_invariant(H, PC.orthant(1))[0]
    assert is_weakly_invariant(H2, K2)[0]
    ok, witness = is_weakly_invariant(*fixtures.pair("negation"))
    assert not ok and witness is not None
    # H(x) = x + ray(e1): x is in H(x), so even C = -orthant is weakly invariant
    shift_e1 = fixtures.process("ray_not_subspace")
    assert is_weakly_invariant(shift_e1, PC.from_generators(2, rays=[(-1, 0), (0, -1)]))[0]


def test_n_dim_linear():
    assert is_n_dim_linear(ConvexProcess.from_matrix(M([[1, 2], [3, 4]])))
    assert is_n_dim_linear(fixtures.process("linear_2d_all_real"))
    assert not is_n_dim_linear(H)


def test_eigenpair():
    assert is_eigenpair(H, 1, (1,))
    assert not is_eigenpair(H, 3, (1,))
    assert not is_eigenpair(H, 1, (0,))
    assert is_eigenpair(H2, 2, (1, -2))


def test_dimension_checks():
    with pytest.raises(DimensionError):
        ConvexProcess(2, PC.orthant(3))
    with pytest.raises(DimensionError):
        image_of_point(H, (1, 2))
    with pytest.raises(DimensionError):
        restrict(H, PC.orthant(2))


def test_image_of_set_via_points():
    # H([1, 2] direction cone) equals union of images of generators
    s = PC.from_generators(1, rays=[(1,)])
    assert image_of_set(H, s) == PC.orthant(1)


@settings(max_examples=40, deadline=None)
@given(processes(max_dim=2))
def test_double_dual_negates_graph(h):
    # J = [0 I; -I 0] squares to -I, so H^{--} has graph -gr(H)
    neg = linear_image(-M.identity(2 * h.n), h.graph)
    assert dual(dual(h)).graph == neg


def test_dual_of_linear_map_is_transpose():
    a = M([[1, 2], [0, 3]])
    assert dual(ConvexProcess.from_matrix(a)) == ConvexProcess.from_matrix(a.T)


@settings(max_examples=40, deadline=None)
@given(processes(max_dim=2))
def test_inverse_swaps_domain_and_image(h):
    assert domain(inverse(h)) == image(h)
    assert kernel(h) == intersect(domain(h), kernel(h))


def test_compose_matches_power():
    rng = random.Random(4)
    for _ in range(10):
        h = random_process(rng, 2)
        assert compose(h, h) == power(h, 2)
