"""Discrete-time linear systems and the subspaces of geometric control.

A system ``Sigma(A, B, C, D)`` defines the linear process with graph
``[I 0; A B] ker[C D]``.  The weakly unobservable subspace, friends, the
strongly reachable subspace and the stabilizable weakly unobservable
subspace ``V_g`` (stability domain: complex plane minus [0, inf)) are
computed exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DimensionError, FriendInfeasible, SplitNotRational
from .linalg import RationalMatrix, Subspace, as_fraction, kernel
from .polynomial import Polynomial, char_poly, count_nonneg_roots, nonneg_split, poly_gcd
from .processes import LinearProcess

_M = RationalMatrix


@dataclass(frozen=True)
class LinearSystem:
    A: RationalMatrix
    B: RationalMatrix
    C: RationalMatrix
    D: RationalMatrix

    def __post_init__(self):
        n = self.A.nrows
        if not self.A.is_square():
            raise DimensionError("A must be square")
        m, p = self.B.ncols, self.C.nrows
        if self.B.nrows != n or self.C.ncols != n or self.D.shape != (p, m):
            raise DimensionError(
                f"inconsistent shapes A{self.A.shape} B{self.B.shape} C{self.C.shape} D{self.D.shape}"
            )

    @property
    def n(self) -> int:
        return self.A.nrows

    @property
    def m(self) -> int:
        return self.B.ncols

    @property
    def p(self) -> int:
        return self.C.nrows

    def transpose(self) -> "LinearSystem":
        """The dual system ``Sigma(A^T, C^T, B^T, D^T)``."""
        return LinearSystem(self.A.T, self.C.T, self.B.T, self.D.T)

    def AC(self) -> RationalMatrix:
        return _M.block([[self.A], [self.C]])

    def BD(self) -> RationalMatrix:
        return _M.block([[self.B], [self.D]])


def _state_times_zero(v: Subspace, p: int) -> Subspace:
    """``V x {0}`` in Q^(n+p)."""
    return Subspace(v.ambient_dim + p, [tuple(b) + (0,) * p for b in v.basis])


def process_of_system(s: LinearSystem) -> LinearProcess:
    """The linear process of ``s``; both defining formulas are computed and compared."""
    n = s.n
    eye = _M.identity(n)
    lifted = _M.block([[eye, _M.zeros(n, s.m)], [s.A, s.B]])
    g1 = kernel(_M.block([[s.C, s.D]])).image(lifted)
    pre = _M.block([[s.A, -eye], [s.C, _M.zeros(s.p, n)]])
    g2 = Subspace(n + s.p, s.BD().columns()).preimage(pre)
    if g1 != g2:  # pragma: no cover - bug guard
        raise AssertionError("the two graph formulas of a linear system disagree")
    return LinearProcess(n, g1)


def realize(l: LinearProcess) -> LinearSystem:
    """``Sigma(0, B, -I, D)`` with ``gr(L) = im[D; B]`` from the canonical graph basis.

    With ``C = -I`` the kernel of ``[C D]`` is ``{(D u, u)}``, so the process of
    the system has graph ``{(D u, B u)}`` exactly.
    """
    n = l.n
    basis = l.graph.basis
    d = _M.from_columns([b[:n] for b in basis], n)
    b = _M.from_columns([b[n:] for b in basis], n)
    s = LinearSystem(_M.zeros(n, n), b, -_M.identity(n), d)
    if process_of_system(s).graph != l.graph:  # pragma: no cover - bug guard
        raise AssertionError("realization round trip failed")
    return s


def weakly_unobservable_chain(s: LinearSystem) -> list[Subspace]:
    """``V_0 = Q^n, V_{l+1} = [A; C]^{-1}(V_l x {0} + im[B; D])`` up to and including the fixpoint."""
    ac = s.AC()
    im_bd = Subspace(s.n + s.p, s.BD().columns())
    chain = [Subspace.full(s.n)]
    while True:
        nxt = (_state_times_zero(chain[-1], s.p) + im_bd).preimage(ac)
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)


def weakly_unobservable(s: LinearSystem) -> Subspace:
    return weakly_unobservable_chain(s)[-1]


def friend(s: LinearSystem, v: Subspace) -> RationalMatrix:
    """An ``F`` with ``(A + B F) V subset V`` and ``V subset ker(C + D F)``.

    For each canonical basis vector ``x_i`` of ``V`` solve
    ``A x_i + B u_i = v_i``, ``C x_i + D u_i = 0`` with ``v_i in V``; then
    ``F x_i = u_i`` and ``F`` vanishes on the added unit vectors.  (Writing
    ``A x_i = v_i + B u_i`` instead would break ``(A + B F) V subset V``.)
    """
    n, m, p = s.n, s.m, s.p
    if v.ambient_dim != n:
        raise DimensionError("subspace and system dimensions differ")
    q = v.dim
    if q == 0:
        return _M.zeros(m, n)
    vb = v.matrix()
    lhs = _M.block([[vb, -s.B], [_M.zeros(p, q), s.D]])
    us = []
    for x in v.basis:
        rhs = tuple(s.A @ x) + tuple(-c for c in s.C @ x)
        sol = lhs.solve(rhs)
        if sol is None:
            raise FriendInfeasible("subspace is not a fixpoint of the weakly unobservable recursion")
        us.append(sol[q:])
    # extend the basis of V to Q^n with unit vectors
    cols = list(v.basis)
    span = v
    for i in range(n):
        e = tuple(Fraction(int(i == j)) for j in range(n))
        if not span.contains(e):
            cols.append(e)
            span = span + Subspace(n, [e])
    x = _M.from_columns(cols, n)
    u = _M.from_columns(us + [(0,) * m] * (n - q), m)
    f = u @ x.inverse()
    return f


def check_friend(s: LinearSystem, v: Subspace, f: RationalMatrix) -> bool:
    closed = s.A + s.B @ f
    out = s.C + s.D @ f
    return v.image(closed) <= v and all(all(c == 0 for c in out @ b) for b in v.basis)


def strongly_reachable(s: LinearSystem) -> Subspace:
    """``T``, with ``T^perp`` the weakly unobservable subspace of the dual system."""
    return weakly_unobservable(s.transpose()).perp()


def _restricted_char_poly(a: RationalMatrix, v: Subspace) -> Polynomial:
    """Characteristic polynomial of ``A`` restricted to the invariant subspace ``V``."""
    cols = [v.coordinates(a @ b) for b in v.basis]
    return char_poly(_M.from_columns(cols, v.dim))


def stabilizable_weakly_unobservable(s: LinearSystem) -> Subspace:
    """``V_g = (ker chi_g(A + B F) cap V) + (T cap V)``.

    ``chi_g`` is taken from ``A + B F`` restricted to ``V``; on the invariant
    subspace ``V`` this yields the same kernel and ignores how ``F`` acts
    off ``V``.

    Raises
    ------
    SplitNotRational
        If a Q-irreducible factor has roots both in and outside [0, inf).
    """
    v = weakly_unobservable(s)
    f = friend(s, v)
    closed = s.A + s.B @ f
    t = strongly_reachable(s)
    if v.dim == 0:
        return v
    try:
        good, _ = nonneg_split(_restricted_char_poly(closed, v))
    except SplitNotRational as exc:
        raise SplitNotRational(f"stable subspace of A+BF on V: {exc}") from exc
    stable = kernel(good.at_matrix(closed)) & v
    return stable + (t & v)


# -- the two conditions on a candidate subspace W -----------------------------

def check_weak_inv_condition(s: LinearSystem, w: Subspace) -> bool:
    """``[A; C] W subset (W x {0}) + im[B; D]``."""
    if w.ambient_dim != s.n:
        raise DimensionError("subspace and system dimensions differ")
    target = _state_times_zero(w, s.p) + Subspace(s.n + s.p, s.BD().columns())
    return w.image(s.AC()) <= target


def stab_condition_at(s: LinearSystem, w: Subspace, lam) -> bool:
    """``W x {0} subset [A - lam I; C] W + im[B; D]`` at a single ``lam``."""
    lam = as_fraction(lam)
    shifted = _M.block([[s.A - _M.identity(s.n).scale(lam)], [s.C]])
    rhs = w.image(shifted) + Subspace(s.n + s.p, s.BD().columns())
    return _state_times_zero(w, s.p) <= rhs


def _interpolate(values: list[Fraction]) -> Polynomial:
    """Polynomial of degree < len(values) through ``(j, values[j])``."""
    out = Polynomial()
    k = len(values)
    for j, yj in enumerate(values):
        if yj == 0:
            continue
        term = Polynomial((yj,))
        for i in range(k):
            if i != j:
                term = term * Polynomial((Fraction(-i, j - i), Fraction(1, j - i)))
        out = out + term
    return out


def w_pencil(s: LinearSystem, w: Subspace) -> tuple[RationalMatrix, RationalMatrix]:
    """``(X, Y)`` in W-coordinates spanning ``gr(L_Sigma) cap (W x W)``."""
    n, k = s.n, w.dim
    g = process_of_system(s).graph
    ww = Subspace(2 * n, [tuple(b) + (0,) * n for b in w.basis] + [(0,) * n + tuple(b) for b in w.basis])
    gw = g & ww
    xs = [w.coordinates(b[:n]) for b in gw.basis]
    ys = [w.coordinates(b[n:]) for b in gw.basis]
    return _M.from_columns(xs, k), _M.from_columns(ys, k)


def check_stab_condition(s: LinearSystem, w: Subspace) -> bool:
    """``W x {0} subset [A - lam I; C] W + im[B; D]`` for every real ``lam >= 0``.

    This equals ``W = (L_W - lam I) W`` where ``gr(L_W) = gr(L_Sigma) cap (W x W)``.
    With ``(X, Y)`` spanning that graph in W-coordinates the condition is
    ``rank(Y - lam X) = dim W`` for all ``lam >= 0``.  The rank drops exactly
    at common roots of all maximal minors, so it is decided by Sturm
    counting on their gcd.  No eigenvalues are computed and the test never
    needs an irrational split.
    """
    if w.ambient_dim != s.n:
        raise DimensionError("subspace and system dimensions differ")
    k = w.dim
    if k == 0:
        return True
    x, y = w_pencil(s, w)
    d = x.ncols
    if d < k:
        return False
    g = Polynomial()
    for cols in combinations(range(d), k):
        xs = _M.from_columns([x.col(j) for j in cols], k)
        ys = _M.from_columns([y.col(j) for j in cols], k)
        vals = [(ys - xs.scale(t)).det() for t in range(k + 1)]
        minor = _interpolate(vals)
        if minor.is_zero():
            continue
        g = minor.monic() if g.is_zero() else poly_gcd(g, minor)
        if g.degree == 0:
            return True
    if g.is_zero():
        return False
    return count_nonneg_roots(g) == 0


__all__ = [
    "LinearSystem",
    "process_of_system",
    "realize",
    "weakly_unobservable",
    "weakly_unobservable_chain",
    "friend",
    "check_friend",
    "strongly_reachable",
    "stabilizable_weakly_unobservable",
    "check_weak_inv_condition",
    "check_stab_condition",
    "stab_condition_at",
    "w_pencil",
]
