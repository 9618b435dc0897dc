"""Exact rational matrices and subspaces.

Everything here works over :class:`fractions.Fraction`; floats are rejected
at the boundary so that no rounding can leak into subspace recursions or
cone conversions.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionError

Vector = tuple  # tuple[Fraction, ...]


def as_fraction(value) -> Fraction:
    """Convert ``int``, ``Fraction`` or a ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted; use 'p/q' strings")
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vec(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero_vector(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector with the same direction."""
    den = 1
    for x in v:
        x = Fraction(x)
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return tuple(ints)
    return tuple(a // g for a in ints)


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                row_r = m[r]
                m[i] = [a - f * b for a, b in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


class RationalMatrix:
    """Dense immutable matrix of Fractions, stored row-major.

    Zero-sized shapes (``n x 0`` or ``0 x n``) are legal; they show up as
    input matrices of systems without inputs.
    """

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(vec(r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise DimensionError("ragged matrix rows")
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols

    # construction -----------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(([1 if i == j else 0 for j in range(n)] for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls(([0] * ncols for _ in range(nrows)), ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "RationalMatrix":
        cols = [vec(c) for c in columns]
        return cls((tuple(c[i] for c in cols) for i in range(nrows)), len(cols))

    @classmethod
    def block(cls, blocks: Sequence[Sequence["RationalMatrix"]]) -> "RationalMatrix":
        rows = []
        ncols = sum(b.ncols for b in blocks[0])
        for band in blocks:
            h = band[0].nrows
            if any(b.nrows != h for b in band) or sum(b.ncols for b in band) != ncols:
                raise DimensionError("incompatible block shapes")
            for i in range(h):
                rows.append(sum((b._rows[i] for b in band), ()))
        return cls(rows, ncols)

    # access -------------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[Vector, ...]:
        return self._rows

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        body = "; ".join(" ".join(format_fraction(x) for x in r) for r in self._rows)
        return f"RationalMatrix({self.nrows}x{self.ncols}: [{body}])"

    # arithmetic -------------------------------------------------------------
    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self._rows), self.nrows) if self.nrows else RationalMatrix.zeros(self.ncols, 0)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return RationalMatrix((tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.ncols)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix((tuple(-a for a in r) for r in self._rows), self.ncols)

    def scale(self, c) -> "RationalMatrix":
        c = as_fraction(c)
        return RationalMatrix((tuple(c * a for a in r) for r in self._rows), self.ncols)

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return RationalMatrix(
                (tuple(dot(r, c) for c in cols) for r in self._rows), other.ncols
            )
        v = tuple(other)
        if len(v) != self.ncols:
            raise DimensionError(f"cannot apply {self.shape} matrix to vector of length {len(v)}")
        return tuple(dot(r, v) for r in self._rows)

    def apply(self, v: Sequence) -> Vector:
        return self @ v

    # structure ----------------------------------------------------------------
    def rank(self) -> int:
        return len(rref(self._rows, self.ncols)[1])

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def trace(self) -> Fraction:
        if not self.is_square():
            raise DimensionError("trace of a non-square matrix")
        return sum((self._rows[i][i] for i in range(self.nrows)), Fraction(0))

    def det(self) -> Fraction:
        if not self.is_square():
            raise DimensionError("determinant of a non-square matrix")
        a = [list(r) for r in self._rows]
        n = self.nrows
        out = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if a[i][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                out = -out
            out *= a[c][c]
            for i in range(c + 1, n):
                if a[i][c] != 0:
                    f = a[i][c] / a[c][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return out

    def inverse(self) -> "RationalMatrix":
        n = self.nrows
        if not self.is_square():
            raise DimensionError("inverse of a non-square matrix")
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._rows)]
        red, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ZeroDivisionError("matrix is singular")
        return RationalMatrix((r[n:] for r in red[:n]), n)

    def solve(self, rhs: Sequence) -> Vector | None:
        """One solution of ``M x = rhs`` (free variables set to zero), or None."""
        b = vec(rhs)
        if len(b) != self.nrows:
            raise DimensionError("right-hand side has wrong length")
        aug = [list(r) + [bi] for r, bi in zip(self._rows, b)]
        red, piv = rref(aug, self.ncols + 1)
        if piv and piv[-1] == self.ncols:
            return None
        x = [Fraction(0)] * self.ncols
        for r, c in zip(red, piv):
            x[c] = r[-1]
        return tuple(x)

    def to_strings(self) -> list[list[str]]:
        return [[format_fraction(x) for x in r] for r in self._rows]


def hstack(*ms: RationalMatrix) -> RationalMatrix:
    return RationalMatrix.block([list(ms)])


def vstack(*ms: RationalMatrix) -> RationalMatrix:
    return RationalMatrix.block([[m] for m in ms])


def diag(*entries) -> RationalMatrix:
    n = len(entries)
    return RationalMatrix(([entries[i] if i == j else 0 for j in range(n)] for i in range(n)), n)


class Subspace:
    """Linear subspace of Q^n in canonical form.

    The basis is kept as the nonzero rows of a reduced row echelon form, i.e.
    the basis matrix (vectors as columns) is in reduced column echelon form.
    Two Subspace objects are equal iff their stored bases are identical.
    """

    __slots__ = ("ambient_dim", "basis", "pivots", "_hash")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vs = [vec(v) for v in vectors]
        for v in vs:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in Q^{ambient_dim}")
        red, piv = rref(vs, ambient_dim) if vs else ([], [])
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in red)
        self.pivots = tuple(piv)
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, RationalMatrix.identity(n).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> RationalMatrix:
        """Basis vectors as the columns of an ``n x dim`` matrix."""
        return RationalMatrix.from_columns(self.basis, self.ambient_dim)

    def reduce(self, v: Sequence) -> Vector:
        """Canonical representative of the coset ``v + self``."""
        out = list(vec(v))
        for b, p in zip(self.basis, self.pivots):
            f = out[p]
            if f != 0:
                out = [x - f * y for x, y in zip(out, b)]
        return tuple(out)

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the canonical basis (v must lie in the subspace)."""
        v = vec(v)
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def contains(self, v: Sequence) -> bool:
        return is_zero_vector(self.reduce(v))

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(
                f"subspaces of Q^{self.ambient_dim} and Q^{other.ambient_dim}"
            )

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    __le__ = issubset

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self.basis))
        return self._hash

    def __repr__(self):
        vs = ", ".join("(" + ", ".join(format_fraction(x) for x in b) + ")" for b in self.basis)
        return f"Subspace(Q^{self.ambient_dim}, span{{{vs}}})"

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return (self.perp() + other.perp()).perp()

    def perp(self) -> "Subspace":
        """Orthogonal complement with respect to the standard inner product."""
        n = self.ambient_dim
        if not self.basis:
            return Subspace.full(n)
        return Subspace(n, _kernel_vectors(self.basis, self.pivots, n))

    def image(self, m: RationalMatrix) -> "Subspace":
        if m.ncols != self.ambient_dim:
            raise DimensionError("matrix does not act on this subspace")
        return Subspace(m.nrows, (m @ b for b in self.basis))

    def preimage(self, m: RationalMatrix) -> "Subspace":
        """``{x : M x in self}``."""
        if m.nrows != self.ambient_dim:
            raise DimensionError("matrix does not map into this subspace")
        normals = self.perp().basis
        if not normals:
            return Subspace.full(m.ncols)
        return kernel(RationalMatrix(normals, self.ambient_dim) @ m)


def _kernel_vectors(red_rows, pivots, ncols) -> list[Vector]:
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(red_rows, pivots):
            v[p] = -r[f]
        out.append(tuple(v))
    return out


def kernel(m: RationalMatrix) -> Subspace:
    """``{x : M x = 0}`` in canonical form."""
    red, piv = rref(m.rows, m.ncols)
    return Subspace(m.ncols, _kernel_vectors(red, piv, m.ncols))


def image(m: RationalMatrix) -> Subspace:
    """Column span of ``m``."""
    return Subspace(m.nrows, m.columns())


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    return u + v


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    return u & v


def orth_complement(u: Subspace) -> Subspace:
    return u.perp()


def span(n: int, *vectors) -> Subspace:
    return Subspace(n, vectors)
