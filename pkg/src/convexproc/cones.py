"""Polyhedral convex cones in double description.

A cone is held as generators (extreme rays plus a lineality basis) and as
constraints (facet normals plus an equation subspace).  Whichever side was
not supplied is computed on demand with Motzkin's double description method
in integer arithmetic.

Canonical form
--------------
* lineality and equation subspaces use :class:`~convexproc.linalg.Subspace`
  canonical bases;
* rays are reduced modulo the lineality space (pivot elimination against its
  canonical basis), scaled to primitive integer vectors and sorted;
* inequality normals are treated the same way modulo the equation space.

With this convention the negative polar of a cone is obtained by swapping
the two descriptions and negating, with no conversion at all.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionError
from .linalg import RationalMatrix, Subspace, as_fraction, dot, format_fraction, primitive, vec

IntVec = tuple  # tuple[int, ...]


# -- double description core -------------------------------------------------

def _normalize(v: list[int]) -> list[int]:
    g = 0
    for a in v:
        g = gcd(g, a)
    if g > 1:
        return [a // g for a in v]
    return v


def _idot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def double_description(
    dim: int, ineqs: Sequence[Sequence[int]], eqs: Sequence[Sequence[int]] = ()
) -> tuple[list[list[int]], list[list[int]]]:
    """Generators of ``{x : a.x >= 0 for a in ineqs, e.x = 0 for e in eqs}``.

    Inputs are integer vectors.  Returns ``(lineality, rays)``: a basis of the
    lineality space and the extreme rays modulo it, both integer.
    """
    lin: list[list[int]] = [[int(i == j) for j in range(dim)] for i in range(dim)]
    rays: list[list[int]] = []
    zsets: list[int] = []

    for e in eqs:
        vals = [_idot(e, l) for l in lin]
        k = next((i for i, v in enumerate(vals) if v), None)
        if k is None:
            continue
        l0, s = lin[k], vals[k]
        lin = [
            _normalize([s * x - v * y for x, y in zip(l, l0)]) if v else l
            for i, (l, v) in enumerate(zip(lin, vals))
            if i != k
        ]

    done = 0  # bitmask of processed inequality indices
    for idx, a in enumerate(ineqs):
        bit = 1 << idx
        vals = [_idot(a, l) for l in lin]
        k = next((i for i, v in enumerate(vals) if v), None)
        if k is not None:
            l0, s = lin[k], vals[k]
            new_lin = []
            for i, (l, v) in enumerate(zip(lin, vals)):
                if i == k:
                    continue
                new_lin.append(_normalize([s * x - v * y for x, y in zip(l, l0)]) if v else l)
            sg = 1 if s > 0 else -1
            new_rays = []
            for r in rays:
                v = _idot(a, r)
                if v:
                    r = _normalize([abs(s) * x - sg * v * y for x, y in zip(r, l0)])
                new_rays.append(r)
            new_rays.append([sg * y for y in l0])
            zsets = [z | bit for z in zsets] + [done]
            lin, rays = new_lin, new_rays
            done |= bit
            continue

        signs = [_idot(a, r) for r in rays]
        pos = [i for i, v in enumerate(signs) if v > 0]
        neg = [i for i, v in enumerate(signs) if v < 0]
        zero = [i for i, v in enumerate(signs) if v == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zero]
        new_z = [zsets[i] for i in pos] + [zsets[i] | bit for i in zero]
        nr = len(rays)
        for p in pos:
            zp = zsets[p]
            for q in neg:
                common = zp & zsets[q]
                adjacent = True
                for t in range(nr):
                    if t != p and t != q and zsets[t] & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vq = signs[p], signs[q]
                r = _normalize([vp * y - vq * x for x, y in zip(rays[p], rays[q])])
                new_rays.append(r)
                new_z.append(common | bit)
        rays, zsets = new_rays, new_z
        done |= bit
    return lin, rays


# -- canonicalization ---------------------------------------------------------

def _to_ints(vs: Iterable[Sequence]) -> list[tuple[int, ...]]:
    out = []
    for v in vs:
        p = primitive(v)
        if any(p):
            out.append(p)
    return out


def _canon_directions(vectors: Iterable[Sequence], modulo: Subspace) -> tuple[IntVec, ...]:
    seen = set()
    for v in vectors:
        r = primitive(modulo.reduce(v))
        if any(r):
            seen.add(r)
    return tuple(sorted(seen))


class PolyhedralCone:
    """Closed convex polyhedral cone ``{L l + R mu : l free, mu >= 0}`` in Q^dim.

    Build with :meth:`from_generators` or :meth:`from_constraints`; the other
    description is derived lazily and cached.
    """

    __slots__ = ("dim", "_v", "_h", "_raw")

    def __init__(self, dim: int, *, _v=None, _h=None, _raw=None):
        self.dim = dim
        self._v = _v  # (rays, lineality Subspace)
        self._h = _h  # (ineqs, equation Subspace)
        self._raw = _raw

    # construction -----------------------------------------------------------
    @classmethod
    def from_generators(cls, dim: int, rays: Iterable[Sequence] = (), lineality: Iterable[Sequence] = ()) -> "PolyhedralCone":
        rays = [vec(r) for r in rays]
        lineality = [vec(l) for l in lineality]
        for v in rays + lineality:
            if len(v) != dim:
                raise DimensionError(f"generator of length {len(v)} for a cone in Q^{dim}")
        return cls(dim, _raw=("V", tuple(rays), tuple(lineality)))

    @classmethod
    def from_constraints(cls, dim: int, ineqs: Iterable[Sequence] = (), eqs: Iterable[Sequence] = ()) -> "PolyhedralCone":
        ineqs = [vec(r) for r in ineqs]
        eqs = [vec(r) for r in eqs]
        for v in ineqs + eqs:
            if len(v) != dim:
                raise DimensionError(f"normal of length {len(v)} for a cone in Q^{dim}")
        return cls(dim, _raw=("H", tuple(ineqs), tuple(eqs)))

    @classmethod
    def from_subspace(cls, s: Subspace) -> "PolyhedralCone":
        return cls(s.ambient_dim, _v=((), s), _h=((), s.perp()))

    @classmethod
    def full(cls, dim: int) -> "PolyhedralCone":
        return cls.from_subspace(Subspace.full(dim))

    @classmethod
    def zero(cls, dim: int) -> "PolyhedralCone":
        return cls.from_subspace(Subspace.zero(dim))

    @classmethod
    def orthant(cls, dim: int) -> "PolyhedralCone":
        eye = RationalMatrix.identity(dim).rows
        return cls.from_generators(dim, rays=eye)

    # the two descriptions ---------------------------------------------------
    def _compute_v(self):
        ineqs, eqs = self._h_source()
        lin, rays = double_description(self.dim, _to_ints(ineqs), _to_ints(eqs))
        lsp = Subspace(self.dim, lin)
        self._v = (_canon_directions(rays, lsp), lsp)

    def _h_source(self):
        if self._h is not None:
            return self._h[0], self._h[1].basis
        if self._raw[0] == "H":
            return self._raw[1], self._raw[2]
        self._compute_h()
        return self._h[0], self._h[1].basis

    def _compute_h(self):
        if self._v is not None:
            rays, lin = self._v[0], self._v[1].basis
        elif self._raw[0] == "V":
            rays, lin = self._raw[1], self._raw[2]
        else:
            self._compute_v()
            rays, lin = self._v[0], self._v[1].basis
        # facets of C are the extreme rays of the dual cone {y : r.y >= 0, l.y = 0}
        dlin, drays = double_description(self.dim, _to_ints(rays), _to_ints(lin))
        esp = Subspace(self.dim, dlin)
        self._h = (_canon_directions(drays, esp), esp)

    @property
    def rays(self) -> tuple[IntVec, ...]:
        """Extreme rays modulo the lineality space, canonical."""
        if self._v is None:
            self._compute_v()
        return self._v[0]

    @property
    def lineality(self) -> Subspace:
        if self._v is None:
            self._compute_v()
        return self._v[1]

    @property
    def ineqs(self) -> tuple[IntVec, ...]:
        """Facet normals ``a`` (meaning ``a.x >= 0``), canonical."""
        if self._h is None:
            self._compute_h()
        return self._h[0]

    @property
    def eqs(self) -> Subspace:
        """Subspace of equation normals; its complement is ``Lin(C)``."""
        if self._h is None:
            self._compute_h()
        return self._h[1]

    def h_rep(self) -> tuple[tuple[IntVec, ...], Subspace]:
        return self.ineqs, self.eqs

    def v_rep(self) -> tuple[tuple[IntVec, ...], Subspace]:
        return self.rays, self.lineality

    def available_rep(self):
        """Whatever description is at hand without running a conversion.

        Returns ``("V", rays, lineality_vectors)`` or ``("H", ineqs, eq_vectors)``.
        """
        if self._v is not None:
            return "V", self._v[0], self._v[1].basis
        if self._h is not None:
            return "H", self._h[0], self._h[1].basis
        return self._raw

    def generators(self) -> list[tuple]:
        """Rays followed by +/- each lineality basis vector; their conic hull is the cone."""
        out = [tuple(Fraction(x) for x in r) for r in self.rays]
        for b in self.lineality.basis:
            out.append(b)
            out.append(tuple(-x for x in b))
        return out

    # predicates ---------------------------------------------------------------
    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        if len(x) != self.dim:
            raise DimensionError(f"point of length {len(x)} for a cone in Q^{self.dim}")
        if any(dot(e, x) != 0 for e in self.eqs.basis):
            return False
        return all(dot(a, x) >= 0 for a in self.ineqs)

    def issubset(self, other: "PolyhedralCone") -> bool:
        _check_dims(self, other)
        if not all(other.contains(r) for r in self.rays):
            return False
        return all(other.lineality.contains(b) or (other.contains(b) and other.contains([-x for x in b]))
                   for b in self.lineality.basis)

    __le__ = issubset

    def __eq__(self, other):
        if not isinstance(other, PolyhedralCone):
            return NotImplemented
        return self.dim == other.dim and self.rays == other.rays and self.lineality == other.lineality

    def __hash__(self):
        return hash((self.dim, self.rays, self.lineality))

    def is_pointed(self) -> bool:
        return self.lineality.dim == 0

    def is_subspace(self) -> bool:
        return not self.rays

    def is_trivial(self) -> bool:
        return not self.rays and self.lineality.dim == 0

    def is_full(self) -> bool:
        return self.lineality.dim == self.dim

    def lin(self) -> Subspace:
        """Largest subspace contained in the cone, ``C cap -C``."""
        return self.lineality

    def Lin(self) -> Subspace:
        """Smallest subspace containing the cone, ``C - C``."""
        return self.eqs.perp()

    def nonzero_element(self) -> tuple | None:
        """A nonzero vector in the cone, or None for the trivial cone."""
        if self.rays:
            return tuple(Fraction(x) for x in self.rays[0])
        if self.lineality.basis:
            return self.lineality.basis[0]
        return None

    def __repr__(self):
        def fmt(vs):
            return "[" + ", ".join("(" + ", ".join(format_fraction(Fraction(x)) for x in v) + ")" for v in vs) + "]"
        return f"PolyhedralCone(Q^{self.dim}, rays={fmt(self.rays)}, lineality={fmt(self.lineality.basis)})"


def _check_dims(a: PolyhedralCone, b: PolyhedralCone):
    if a.dim != b.dim:
        raise DimensionError(f"cones in Q^{a.dim} and Q^{b.dim}")


def dd_convert(c: PolyhedralCone) -> PolyhedralCone:
    """Force both descriptions to be computed; returns a cone carrying both."""
    return PolyhedralCone(c.dim, _v=c.v_rep(), _h=c.h_rep())


def polar(c: PolyhedralCone) -> PolyhedralCone:
    """Negative polar ``{y : <x, y> <= 0 for all x in C}``."""
    rays, lin = c.v_rep()
    ineqs, eqs = c.h_rep()
    neg_ineqs = tuple(sorted(tuple(-x for x in a) for a in ineqs))
    neg_rays = tuple(sorted(tuple(-x for x in r) for r in rays))
    return PolyhedralCone(c.dim, _v=(neg_ineqs, eqs), _h=(neg_rays, lin))


def intersect(c1: PolyhedralCone, c2: PolyhedralCone) -> PolyhedralCone:
    _check_dims(c1, c2)
    return PolyhedralCone.from_constraints(
        c1.dim, c1.ineqs + c2.ineqs, c1.eqs.basis + c2.eqs.basis
    )


def minkowski_sum(c1: PolyhedralCone, c2: PolyhedralCone) -> PolyhedralCone:
    _check_dims(c1, c2)
    return PolyhedralCone.from_generators(
        c1.dim, c1.rays + c2.rays, c1.lineality.basis + c2.lineality.basis
    )


def linear_image(m: RationalMatrix, c: PolyhedralCone) -> PolyhedralCone:
    """``M C``, computed on generators."""
    if m.ncols != c.dim:
        raise DimensionError(f"{m.shape} matrix applied to a cone in Q^{c.dim}")
    return PolyhedralCone.from_generators(
        m.nrows, (m @ r for r in c.rays), (m @ l for l in c.lineality.basis)
    )


def preimage(m: RationalMatrix, c: PolyhedralCone) -> PolyhedralCone:
    """``{x : M x in C}``, computed on constraints."""
    if m.nrows != c.dim:
        raise DimensionError(f"{m.shape} matrix mapped into a cone in Q^{c.dim}")
    mt = m.T
    return PolyhedralCone.from_constraints(
        m.ncols, (mt @ a for a in c.ineqs), (mt @ e for e in c.eqs.basis)
    )


def cone_product(c1: PolyhedralCone, c2: PolyhedralCone) -> PolyhedralCone:
    """``C1 x C2`` in Q^(d1+d2); both canonical descriptions carry over blockwise."""
    d1, d2 = c1.dim, c2.dim
    z1, z2 = (0,) * d1, (0,) * d2

    def sub(s1: Subspace, s2: Subspace) -> Subspace:
        return Subspace(d1 + d2, [tuple(b) + z2 for b in s1.basis] + [z1 + tuple(b) for b in s2.basis])

    rays = tuple(sorted([tuple(r) + z2 for r in c1.rays] + [z1 + tuple(r) for r in c2.rays]))
    ineqs = tuple(sorted([tuple(a) + z2 for a in c1.ineqs] + [z1 + tuple(a) for a in c2.ineqs]))
    return PolyhedralCone(
        d1 + d2,
        _v=(rays, sub(c1.lineality, c2.lineality)),
        _h=(ineqs, sub(c1.eqs, c2.eqs)),
    )


def lin_of(c: PolyhedralCone) -> Subspace:
    return c.lin()


def Lin_of(c: PolyhedralCone) -> Subspace:
    return c.Lin()


def is_pointed(c: PolyhedralCone) -> bool:
    return c.is_pointed()


def is_subspace(c: PolyhedralCone) -> bool:
    return c.is_subspace()


def is_trivial(c: PolyhedralCone) -> bool:
    return c.is_trivial()


def contains(c: PolyhedralCone, x: Sequence) -> bool:
    return c.contains(x)


def cone_equal(c1: PolyhedralCone, c2: PolyhedralCone) -> bool:
    return c1 == c2


class Polyhedron:
    """Convex polyhedron ``P`` in Q^n held through its homogenization.

    ``cone`` lives in Q^(1+n) with coordinates ``(t, y)`` and ``t >= 0``; the
    slice ``t = 1`` is ``P``.  ``P`` is empty iff no element of the cone has
    ``t > 0``.  Needed because images of single points under a convex
    process are polyhedra, not cones.
    """

    __slots__ = ("n", "cone")

    def __init__(self, cone: PolyhedralCone):
        self.n = cone.dim - 1
        self.cone = cone

    @classmethod
    def point(cls, p: Sequence) -> "Polyhedron":
        p = vec(p)
        return cls(PolyhedralCone.from_generators(len(p) + 1, rays=[(1,) + p]))

    @classmethod
    def empty(cls, n: int) -> "Polyhedron":
        return cls(PolyhedralCone.zero(n + 1))

    def is_empty(self) -> bool:
        return not any(r[0] > 0 for r in self.cone.rays)

    def contains(self, y: Sequence) -> bool:
        return self.cone.contains((1,) + vec(y))

    def recession_cone(self) -> PolyhedralCone:
        drop = RationalMatrix([[int(j == i + 1) for j in range(self.n + 1)] for i in range(self.n)], self.n + 1)
        at_zero = intersect(self.cone, PolyhedralCone.from_constraints(self.n + 1, eqs=[[1] + [0] * self.n]))
        return linear_image(drop, at_zero)

    def __eq__(self, other):
        if not isinstance(other, Polyhedron):
            return NotImplemented
        if self.n != other.n:
            return False
        e1, e2 = self.is_empty(), other.is_empty()
        if e1 or e2:
            return e1 and e2
        return self.cone == other.cone

    def __hash__(self):
        return hash((self.n, None if self.is_empty() else self.cone))

    def __add__(self, other: "Polyhedron") -> "Polyhedron":
        """Minkowski sum, as a fiber sum of the homogenizations."""
        if self.n != other.n:
            raise DimensionError("polyhedra of different dimensions")
        n = self.n
        # coordinates (t, p, q) in Q^(1+2n)
        def sel(blocks):
            rows = []
            for b in blocks:
                rows.extend(b)
            return RationalMatrix(rows, 1 + 2 * n)
        e = lambda i: [int(j == i) for j in range(1 + 2 * n)]
        to_p = sel([[e(0)], [e(1 + i) for i in range(n)]])
        to_q = sel([[e(0)], [e(1 + n + i) for i in range(n)]])
        both = intersect(preimage(to_p, self.cone), preimage(to_q, other.cone))
        add = RationalMatrix([e(0)] + [[a + b for a, b in zip(e(1 + i), e(1 + n + i))] for i in range(n)], 1 + 2 * n)
        return Polyhedron(linear_image(add, both))

    def __repr__(self):
        if self.is_empty():
            return f"Polyhedron(empty in Q^{self.n})"
        return f"Polyhedron(Q^{self.n}, homogenization={self.cone!r})"
