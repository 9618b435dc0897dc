"""Convex processes represented by their graphs.

Graph vectors are stacked ``(x, y)`` with ``y in H(x)``; every block matrix
below is written in that order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import cones
from .cones import Polyhedron, PolyhedralCone, cone_product, intersect, linear_image, preimage
from .errors import DimensionError
from .linalg import RationalMatrix, Subspace, as_fraction, vec


def _eye(n):
    return RationalMatrix.identity(n)


def _zero(r, c):
    return RationalMatrix.zeros(r, c)


def first_block(n: int) -> RationalMatrix:
    """``[I 0]`` : (x, y) -> x."""
    return RationalMatrix.block([[_eye(n), _zero(n, n)]])


def second_block(n: int) -> RationalMatrix:
    """``[0 I]`` : (x, y) -> y."""
    return RationalMatrix.block([[_zero(n, n), _eye(n)]])


def swap_blocks(n: int) -> RationalMatrix:
    return RationalMatrix.block([[_zero(n, n), _eye(n)], [_eye(n), _zero(n, n)]])


@dataclass(frozen=True)
class ConvexProcess:
    """Set-valued map on Q^n whose graph is a polyhedral (hence closed) convex cone."""

    n: int
    graph: PolyhedralCone

    def __post_init__(self):
        if self.graph.dim != 2 * self.n:
            raise DimensionError(f"graph in Q^{self.graph.dim} for a process on Q^{self.n}")

    @classmethod
    def from_matrix(cls, a: RationalMatrix) -> "ConvexProcess":
        """The linear map ``x -> A x`` as a process."""
        if not a.is_square():
            raise DimensionError("a process needs a square matrix")
        n = a.nrows
        g = RationalMatrix.block([[_eye(n)], [a]])
        return cls(n, PolyhedralCone.from_subspace(Subspace(2 * n, g.columns())))

    @classmethod
    def identity(cls, n: int) -> "ConvexProcess":
        return cls.from_matrix(_eye(n))

    def __call__(self, x: Sequence) -> Polyhedron:
        return image_of_point(self, x)

    def __eq__(self, other):
        if not isinstance(other, ConvexProcess):
            return NotImplemented
        return self.n == other.n and self.graph == other.graph

    def __hash__(self):
        return hash((self.n, self.graph))

    def contains_pair(self, x: Sequence, y: Sequence) -> bool:
        return self.graph.contains(tuple(vec(x)) + tuple(vec(y)))


@dataclass(frozen=True)
class LinearProcess:
    """Set-valued map whose graph is a subspace of Q^(2n)."""

    n: int
    graph: Subspace

    def __post_init__(self):
        if self.graph.ambient_dim != 2 * self.n:
            raise DimensionError(f"graph in Q^{self.graph.ambient_dim} for a process on Q^{self.n}")

    def as_convex(self) -> ConvexProcess:
        return ConvexProcess(self.n, PolyhedralCone.from_subspace(self.graph))

    def domain(self) -> Subspace:
        return self.graph.image(first_block(self.n))

    def at_zero(self) -> Subspace:
        """``L(0)``."""
        return Subspace(self.n, [b[self.n:] for b in (self.graph & _x_zero(self.n)).basis])


def _x_zero(n: int) -> Subspace:
    """``{0} x Q^n``."""
    return Subspace(2 * n, [[0] * n + [int(i == j) for j in range(n)] for i in range(n)])


# -- graph transformations ----------------------------------------------------

def inverse(h: ConvexProcess) -> ConvexProcess:
    return ConvexProcess(h.n, linear_image(swap_blocks(h.n), h.graph))


def shift(h: ConvexProcess, lam) -> ConvexProcess:
    """``H - lam I`` via ``[I 0; -lam I I] gr(H)``."""
    n = h.n
    lam = as_fraction(lam)
    m = RationalMatrix.block([[_eye(n), _zero(n, n)], [_eye(n).scale(-lam), _eye(n)]])
    return ConvexProcess(n, linear_image(m, h.graph))


def dual(h: ConvexProcess) -> ConvexProcess:
    """Negative dual: ``gr(H^-) = [0 I; -I 0] gr(H)^-``.

    The block matrix squares to ``-I``, so applying this twice gives the
    process with graph ``-gr(H)``, not ``H`` itself.
    """
    n = h.n
    m = RationalMatrix.block([[_zero(n, n), _eye(n)], [-_eye(n), _zero(n, n)]])
    return ConvexProcess(n, linear_image(m, cones.polar(h.graph)))


def compose(outer: ConvexProcess, inner: ConvexProcess) -> ConvexProcess:
    """``outer o inner``: x -> outer(inner(x)), by projecting the relation product."""
    if outer.n != inner.n:
        raise DimensionError("composing processes on different spaces")
    n = inner.n
    z = _zero(n, n)
    e = _eye(n)
    p_xy = RationalMatrix.block([[e, z, z], [z, e, z]])
    p_yz = RationalMatrix.block([[z, e, z], [z, z, e]])
    p_xz = RationalMatrix.block([[e, z, z], [z, z, e]])
    rel = intersect(preimage(p_xy, inner.graph), preimage(p_yz, outer.graph))
    return ConvexProcess(n, linear_image(p_xz, rel))


def power(h: ConvexProcess, q: int) -> ConvexProcess:
    if q < 0:
        raise ValueError("power needs q >= 0")
    out = ConvexProcess.identity(h.n)
    for _ in range(q):
        out = compose(h, out)
        out = ConvexProcess(out.n, cones.dd_convert(out.graph))
    return out


def domain(h: ConvexProcess) -> PolyhedralCone:
    return linear_image(first_block(h.n), h.graph)


def image(h: ConvexProcess) -> PolyhedralCone:
    return linear_image(second_block(h.n), h.graph)


def kernel(h: ConvexProcess) -> PolyhedralCone:
    """``{x : 0 in H(x)}``."""
    n = h.n
    return preimage(RationalMatrix.block([[_eye(n)], [_zero(n, n)]]), h.graph)


dom, im, ker = domain, image, kernel


def image_of_set(h: ConvexProcess, s: PolyhedralCone) -> PolyhedralCone:
    """``H(S) = [0 I](gr(H) cap (S x Q^n))``."""
    if s.dim != h.n:
        raise DimensionError(f"set in Q^{s.dim} for a process on Q^{h.n}")
    sx = cone_product(s, PolyhedralCone.full(h.n))
    return linear_image(second_block(h.n), intersect(h.graph, sx))


def image_of_point(h: ConvexProcess, x: Sequence) -> Polyhedron:
    """``H(x)`` as a polyhedron: homogenized as ``{(t, y) : (t x, y) in gr(H), t >= 0}``."""
    x = vec(x)
    n = h.n
    if len(x) != n:
        raise DimensionError(f"point of length {len(x)} for a process on Q^{n}")
    # (t, y) -> (t x, y)
    rows = [[x[i]] + [0] * n for i in range(n)] + [[0] + [int(i == j) for j in range(n)] for i in range(n)]
    m = RationalMatrix(rows, n + 1)
    hom = intersect(preimage(m, h.graph), PolyhedralCone.from_constraints(n + 1, ineqs=[[1] + [0] * n]))
    return Polyhedron(hom)


def at_zero(h: ConvexProcess) -> PolyhedralCone:
    """``H(0)``."""
    return image_of_set(h, PolyhedralCone.zero(h.n))


def minimal_linear(h: ConvexProcess) -> LinearProcess:
    """``L_-``: graph ``lin(gr H)``."""
    return LinearProcess(h.n, h.graph.lin())


def maximal_linear(h: ConvexProcess) -> LinearProcess:
    """``L_+``: graph ``Lin(gr H)``."""
    return LinearProcess(h.n, h.graph.Lin())


def restrict(h: ConvexProcess, k: PolyhedralCone) -> ConvexProcess:
    """``H_K``: ``gr(H) cap (K x K)``."""
    if k.dim != h.n:
        raise DimensionError(f"cone in Q^{k.dim} for a process on Q^{h.n}")
    return ConvexProcess(h.n, intersect(h.graph, cone_product(k, k)))


def reduce(h: ConvexProcess, k: PolyhedralCone, w: Subspace) -> ConvexProcess:
    """``H_{K,W}``: ``(gr(H_K) + ({0} x W)) cap ((K cap W^perp) x (K cap W^perp))``."""
    n = h.n
    if w.ambient_dim != n:
        raise DimensionError(f"subspace in Q^{w.ambient_dim} for a process on Q^{n}")
    hk = restrict(h, k)
    zero_w = cone_product(PolyhedralCone.zero(n), PolyhedralCone.from_subspace(w))
    k_perp = intersect(k, PolyhedralCone.from_subspace(w.perp()))
    g = intersect(cones.minkowski_sum(hk.graph, zero_w), cone_product(k_perp, k_perp))
    return ConvexProcess(n, g)


def preimage_of_set(h: ConvexProcess, c: PolyhedralCone) -> PolyhedralCone:
    """``H^{-1}(C) = {x : H(x) cap C nonempty}``."""
    return image_of_set(inverse(h), c)


def is_weakly_invariant(h: ConvexProcess, c: PolyhedralCone) -> tuple[bool, tuple | None]:
    """Whether ``H(x) cap C`` is nonempty for every ``x in C``.

    Tested as the inclusion ``C subset H^{-1}(C)`` on the generators of ``C``.
    On failure the second item is a generator ``x`` of ``C`` with
    ``H(x) cap C`` empty.
    """
    pre = preimage_of_set(h, c)
    for g in c.generators():
        if not pre.contains(g):
            return False, g
    return True, None


def is_n_dim_linear(h: ConvexProcess) -> bool:
    return h.graph.is_subspace() and h.graph.lineality.dim == h.n


def linear_process_from_matrix(a: RationalMatrix) -> LinearProcess:
    n = a.nrows
    return LinearProcess(n, Subspace(2 * n, RationalMatrix.block([[_eye(n)], [a]]).columns()))


def is_eigenpair(h: ConvexProcess, lam, xi: Sequence) -> bool:
    xi = vec(xi)
    lam = as_fraction(lam)
    return any(v != 0 for v in xi) and h.contains_pair(xi, [lam * v for v in xi])

