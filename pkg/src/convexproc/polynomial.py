"""Univariate rational polynomials, Sturm counting, and the nonnegative-root split.

The stability domain used by the geometric-control code is the complement of
the closed half-line [0, inf).  Every Q-irreducible factor of a characteristic
polynomial is classified as having all, none, or only some of its complex
roots in [0, inf); only the first two can be separated over Q.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

from .errors import DimensionError, SplitNotRational
from .linalg import RationalMatrix, Subspace, as_fraction, format_fraction, kernel


class Polynomial:
    """Polynomial with Fraction coefficients in ascending degree order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        c = [as_fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, a) -> "Polynomial":
        return cls((a,))

    @classmethod
    def from_roots(cls, *roots) -> "Polynomial":
        p = cls((1,))
        for r in roots:
            p = p * cls((-as_fraction(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lc = self.lead
        return Polynomial(c / lc for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "Polynomial(0)"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            s = format_fraction(c)
            terms.append(s if k == 0 else f"{s}*x^{k}" if k > 1 else f"{s}*x")
        return "Polynomial(" + " + ".join(terms) + ")"

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = as_fraction(other)
            return Polynomial(c * a for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        q = [Fraction(0)] * max(len(rem) - dq, 0)
        lc = other.lead
        for k in range(len(rem) - 1, dq - 1, -1):
            f = rem[k] / lc
            if f == 0:
                continue
            q[k - dq] = f
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= f * b
        return Polynomial(q), Polynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        x = as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def at_matrix(self, a: RationalMatrix) -> RationalMatrix:
        """Evaluate at a square matrix by Horner's rule."""
        if not a.is_square():
            raise DimensionError("polynomial evaluated at a non-square matrix")
        n = a.nrows
        acc = RationalMatrix.zeros(n, n)
        eye = RationalMatrix.identity(n)
        for c in reversed(self.coeffs):
            acc = acc @ a + eye.scale(c)
        return acc


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def char_poly(a: RationalMatrix) -> Polynomial:
    """Characteristic polynomial det(xI - A), monic, via Faddeev-LeVerrier."""
    if not a.is_square():
        raise DimensionError("characteristic polynomial of a non-square matrix")
    n = a.nrows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    eye = RationalMatrix.identity(n)
    m = RationalMatrix.zeros(n, n)
    for k in range(1, n + 1):
        m = a @ m + eye.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(a @ m).trace() / k
    return Polynomial(coeffs)


# -- Sturm sequences ---------------------------------------------------------

def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def _variations(signs) -> int:
    s = [x for x in signs if x != 0]
    return sum(1 for a, b in zip(s, s[1:]) if (a > 0) != (b > 0))


def _sign_at(p: Polynomial, x) -> int:
    v = p(x)
    return (v > 0) - (v < 0)


def _sign_at_pos_inf(p: Polynomial) -> int:
    return (p.lead > 0) - (p.lead < 0)


def _sign_at_neg_inf(p: Polynomial) -> int:
    s = _sign_at_pos_inf(p)
    return s if p.degree % 2 == 0 else -s


def count_real_roots(p: Polynomial, lo=None, hi=None) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``.

    ``None`` stands for -inf / +inf.  ``p`` must be nonzero.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    seq = sturm_sequence(squarefree_part(p))
    v_lo = _variations(_sign_at_neg_inf(q) for q in seq) if lo is None else _variations(_sign_at(q, lo) for q in seq)
    v_hi = _variations(_sign_at_pos_inf(q) for q in seq) if hi is None else _variations(_sign_at(q, hi) for q in seq)
    return v_lo - v_hi


def count_nonneg_roots(p: Polynomial) -> int:
    """Distinct real roots in [0, inf)."""
    sf = squarefree_part(p)
    at_zero = 0
    if sf(0) == 0:
        at_zero = 1
        sf = sf // Polynomial.x()
    if sf.degree <= 0:
        return at_zero
    return at_zero + count_real_roots(sf, 0, None)


# -- factorization over Q -----------------------------------------------------

def squarefree_part(p: Polynomial) -> Polynomial:
    if p.degree <= 0:
        return p.monic()
    return (p // poly_gcd(p, p.derivative())).monic()


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: monic squarefree, pairwise coprime a_i with p = lc * prod a_i^i."""
    p = p.monic()
    if p.degree <= 0:
        return []
    out = []
    g = poly_gcd(p, p.derivative())
    w = p // g
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, g)
        z = (w // y).monic()
        if z.degree > 0:
            out.append((z, i))
        w, g, i = y, g // y, i + 1
    return out


def _integer_coeffs(p: Polynomial) -> list[int]:
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    return [int(c * den) for c in p.coeffs]


_DIVISOR_LIMIT = 10**12


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p: Polynomial) -> list[Fraction] | None:
    """Distinct rational roots, or None when the coefficients are too large to search."""
    roots = []
    q = p
    if q.degree >= 1 and q(0) == 0:
        roots.append(Fraction(0))
        while q(0) == 0 and q.degree >= 1:
            q = q // Polynomial.x()
    if q.degree < 1:
        return roots
    ints = _integer_coeffs(q)
    a0, an = ints[0], ints[-1]
    if max(abs(a0), abs(an)) > _DIVISOR_LIMIT:
        return None
    for num in _divisors(a0):
        for den in _divisors(an):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and q(cand) == 0:
                    roots.append(cand)
    return roots


def _sympy_factor(p: Polynomial) -> list[tuple[Polynomial, int]] | None:
    try:
        import sympy
    except ImportError:  # pragma: no cover - sympy is a declared dependency
        return None
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p.coeffs))
    _, factors = sympy.factor_list(expr, x, domain="QQ")
    out = []
    for f, mult in factors:
        cs = sympy.Poly(f, x, domain="QQ").all_coeffs()[::-1]
        out.append((Polynomial(Fraction(int(c.p), int(c.q)) for c in cs).monic(), int(mult)))
    return out


def factor_rational(p: Polynomial) -> list[tuple[Polynomial, int]] | None:
    """Monic Q-irreducible factors with multiplicities.

    Squarefree decomposition and rational-root extraction are done here;
    residual parts of degree 2 or 3 without rational roots are irreducible.
    Larger residuals go to sympy.  Returns None if irreducibility cannot be
    certified.
    """
    out: list[tuple[Polynomial, int]] = []
    for part, mult in squarefree_decomposition(p):
        roots = rational_roots(part)
        if roots is None:
            sub = _sympy_factor(part)
            if sub is None:
                return None
            out.extend((f, mult * m) for f, m in sub if f.degree > 0)
            continue
        rest = part
        for r in roots:
            lin = Polynomial((-r, 1))
            out.append((lin, mult))
            rest = rest // lin
        if rest.degree <= 0:
            continue
        if rest.degree <= 3:
            out.append((rest.monic(), mult))
            continue
        sub = _sympy_factor(rest)
        if sub is None:
            return None
        out.extend((f, mult * m) for f, m in sub if f.degree > 0)
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs, fm[1]))
    return out


class RootLocation(enum.Enum):
    ALL_IN = "ALL_IN"
    NONE_IN = "NONE_IN"
    MIXED = "MIXED"


def _classify_squarefree(f: Polynomial) -> RootLocation:
    k = count_nonneg_roots(f)
    if k == 0:
        return RootLocation.NONE_IN
    if k == f.degree:
        return RootLocation.ALL_IN
    return RootLocation.MIXED


def roots_in_nonneg_reals(p: Polynomial) -> list[tuple[Polynomial, int, RootLocation]]:
    """Classify each Q-irreducible factor of ``p`` by where its roots lie relative to [0, inf).

    A factor is ALL_IN when every complex root is real and nonnegative,
    NONE_IN when no root is, and MIXED otherwise.

    Raises
    ------
    SplitNotRational
        If ``p`` cannot be factored and the Sturm count on its squarefree
        part is inconclusive.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    factors = factor_rational(p)
    if factors is None:
        out = []
        for part, mult in squarefree_decomposition(p):
            loc = _classify_squarefree(part)
            if loc is RootLocation.MIXED:
                raise SplitNotRational(f"cannot certify factorization of {part!r}")
            out.append((part, mult, loc))
        return out
    return [(f, m, _classify_squarefree(f)) for f, m in factors]


def nonneg_split(p: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Split ``p`` into (good, bad): roots of ``good`` avoid [0, inf), roots of ``bad`` lie in it."""
    good = Polynomial((1,))
    bad = Polynomial((1,))
    for f, m, loc in roots_in_nonneg_reals(p):
        if loc is RootLocation.MIXED:
            raise SplitNotRational(
                f"factor {f!r} has roots both in and outside [0, inf)"
            )
        if loc is RootLocation.NONE_IN:
            good = good * f**m
        else:
            bad = bad * f**m
    return good, bad


def stable_subspace(a: RationalMatrix) -> Subspace:
    """``ker chi_g(A)`` where chi_g collects the factors of det(xI - A) with no root in [0, inf)."""
    good, _ = nonneg_split(char_poly(a))
    return kernel(good.at_matrix(a))
