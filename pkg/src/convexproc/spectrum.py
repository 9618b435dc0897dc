"""Eigencones and spectra of convex processes relative to a cone.

Membership of a single ``lam`` in ``sigma(H, K)`` is always decided exactly;
scanning only chooses which ``lam`` get probed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cones import PolyhedralCone, intersect
from .errors import DimensionError, PreconditionError
from .linalg import RationalMatrix, as_fraction, format_fraction, vec
from .processes import ConvexProcess, dual, is_eigenpair, is_n_dim_linear
from .simplex import solve_lp


def eigencone(h: ConvexProcess, lam) -> PolyhedralCone:
    """``ker(H - lam I) = {x : lam x in H(x)}``.

    Computed as the preimage of the graph under ``x -> (x, lam x)``, which is
    the same cone as the kernel of the shifted process.
    """
    n = h.n
    lam = as_fraction(lam)
    eye = RationalMatrix.identity(n)
    from .cones import preimage

    return preimage(RationalMatrix.block([[eye], [eye.scale(lam)]]), h.graph)


def is_eigenvalue_in(h: ConvexProcess, k: PolyhedralCone, lam) -> tuple[bool, tuple | None]:
    """Decide ``lam in sigma(H, K)``; on success also return an eigenvector in ``K``."""
    if k.dim != h.n:
        raise DimensionError(f"cone in Q^{k.dim} for a process on Q^{h.n}")
    cap = intersect(eigencone(h, lam), k)
    xi = cap.nonzero_element()
    if xi is None:
        return False, None
    return True, xi


@dataclass(frozen=True)
class SpectrumQuery:
    process: ConvexProcess
    cone: PolyhedralCone
    lambda_range: tuple[Fraction, Fraction]
    grid_points: int = 17
    refine_tolerance: Fraction = Fraction(1, 1024)

    def __post_init__(self):
        lo, hi = (as_fraction(v) for v in self.lambda_range)
        object.__setattr__(self, "lambda_range", (lo, hi))
        object.__setattr__(self, "refine_tolerance", as_fraction(self.refine_tolerance))
        if lo > hi:
            raise ValueError(f"empty lambda range [{lo}, {hi}]")
        if self.grid_points < 2:
            raise ValueError("grid_points must be at least 2")
        if self.refine_tolerance <= 0:
            raise ValueError("refine_tolerance must be positive")
        if self.cone.dim != self.process.n:
            raise DimensionError("cone and process dimensions differ")

    def grid(self) -> list[Fraction]:
        lo, hi = self.lambda_range
        step = (hi - lo) / (self.grid_points - 1)
        return [lo + i * step for i in range(self.grid_points)]


@dataclass(frozen=True)
class Endpoint:
    value: Fraction  # a member of the spectrum
    status: str  # "exact" | "refined-to-tolerance"
    outer: Fraction | None = None  # nearest probed non-member beyond ``value``

    def to_document(self) -> dict:
        doc = {"value": format_fraction(self.value), "status": self.status}
        if self.outer is not None:
            doc["outer"] = format_fraction(self.outer)
        return doc


@dataclass(frozen=True)
class SpectrumInterval:
    lo: Endpoint
    hi: Endpoint

    def to_document(self) -> dict:
        return {"lo": self.lo.to_document(), "hi": self.hi.to_document()}


@dataclass
class SpectrumReport:
    exact_members: list[tuple[Fraction, tuple]] = field(default_factory=list)
    intervals: list[SpectrumInterval] = field(default_factory=list)
    nonmembers_checked: list[Fraction] = field(default_factory=list)

    def to_document(self) -> dict:
        return {
            "exact_members": [
                {"lambda": format_fraction(l), "eigenvector": [format_fraction(x) for x in xi]}
                for l, xi in self.exact_members
            ],
            "intervals": [iv.to_document() for iv in self.intervals],
            "nonmembers_checked": [format_fraction(l) for l in self.nonmembers_checked],
        }


def _bisect(member, inside: Fraction, outside: Fraction, tol: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink a bracket with ``inside`` a member and ``outside`` not, until ``|inside - outside| <= tol``."""
    while abs(inside - outside) > tol:
        mid = (inside + outside) / 2
        if member(mid):
            inside = mid
        else:
            outside = mid
    return inside, outside


def spectrum_scan(q: SpectrumQuery) -> SpectrumReport:
    """Probe ``sigma(H, K)`` on a grid and refine membership changes by bisection.

    Every grid member is stored with an eigenvector certificate.  Maximal
    runs of members become intervals.  An endpoint that coincides with the
    query range bound is exact for ``sigma cap range``; interior endpoints
    are members lying within ``refine_tolerance`` of a probed non-member.
    """
    h, k = q.process, q.cone
    cache: dict[Fraction, bool] = {}

    def member(lam):
        if lam not in cache:
            cache[lam] = is_eigenvalue_in(h, k, lam)[0]
        return cache[lam]

    report = SpectrumReport()
    grid = q.grid()
    flags = []
    for lam in grid:
        ok, xi = is_eigenvalue_in(h, k, lam)
        cache[lam] = ok
        flags.append(ok)
        if ok:
            if not (k.contains(xi) and is_eigenpair(h, lam, xi)):
                raise AssertionError(f"eigenvector certificate failed at lambda={lam}")
            report.exact_members.append((lam, xi))
        else:
            report.nonmembers_checked.append(lam)

    tol = q.refine_tolerance
    i = 0
    while i < len(grid):
        if not flags[i]:
            i += 1
            continue
        j = i
        while j + 1 < len(grid) and flags[j + 1]:
            j += 1
        if i == 0:
            lo = Endpoint(grid[0], "exact")
        else:
            inside, outside = _bisect(member, grid[i], grid[i - 1], tol)
            lo = Endpoint(inside, "refined-to-tolerance", outside)
        if j == len(grid) - 1:
            hi = Endpoint(grid[-1], "exact")
        else:
            inside, outside = _bisect(member, grid[j], grid[j + 1], tol)
            hi = Endpoint(inside, "refined-to-tolerance", outside)
        report.intervals.append(SpectrumInterval(lo, hi))
        i = j + 1
    return report


# -- independent oracle -----------------------------------------------------

def _membership_rows(rep, point_cols, nvars_before, lam_blocks):
    """Linear constraints expressing ``P xi in C`` for a cone given by ``rep``.

    ``point_cols`` maps each coordinate of the target point to a list of
    ``(xi index, coefficient)``.  Returns (extra variable count, eq rows,
    ge rows, nonneg variable indices) with rows over all variables.
    """
    kind, first, second = rep
    dim = len(point_cols)
    if kind == "V":
        rays, lins = list(first), list(second)
        extra = len(rays) + len(lins)
        eq = []
        for c in range(dim):
            row = {}
            for idx, coef in point_cols[c]:
                row[idx] = row.get(idx, 0) + coef
            for j, r in enumerate(rays):
                if r[c]:
                    row[nvars_before + j] = -Fraction(r[c])
            for j, l in enumerate(lins):
                if l[c]:
                    row[nvars_before + len(rays) + j] = -Fraction(l[c])
            eq.append(row)
        nonneg = [nvars_before + j for j in range(len(rays))]
        return extra, eq, [], nonneg
    ineqs, eqs = list(first), list(second)

    def compose(a):
        row = {}
        for c in range(dim):
            if a[c]:
                for idx, coef in point_cols[c]:
                    row[idx] = row.get(idx, 0) + Fraction(a[c]) * coef
        return row

    return 0, [compose(e) for e in eqs], [compose(a) for a in ineqs], []


def oracle_eigenpair_search(h: ConvexProcess, k: PolyhedralCone, lam) -> tuple | None:
    """Brute-force eigenvector search by exact linear programming.

    Solves ``{(xi, lam xi) in gr(H), xi in K, <c, xi> = 1}`` with an exact
    simplex for each normalizing functional ``c`` in a fan covering every
    nonzero point of ``K``.  Uses whatever descriptions of the graph and of
    ``K`` are already at hand and never calls the eigencone or a
    double-description conversion.
    """
    n = h.n
    lam = as_fraction(lam)
    g_rep = h.graph.available_rep()
    k_rep = k.available_rep()
    # xi occupies variables 0..n-1; graph point is (xi, lam xi)
    graph_cols = [[(i, Fraction(1))] for i in range(n)] + [[(i, lam)] for i in range(n)]
    k_cols = [[(i, Fraction(1))] for i in range(n)]
    g_extra, g_eq, g_ge, g_nn = _membership_rows(g_rep, graph_cols, n, None)
    k_extra, k_eq, k_ge, k_nn = _membership_rows(k_rep, k_cols, n + g_extra, None)
    nv = n + g_extra + k_extra

    def dense(row):
        out = [Fraction(0)] * nv
        for i, v in row.items():
            out[i] += v
        return out

    eq_rows = [(dense(r), 0) for r in g_eq + k_eq]
    ge_rows = [(dense(r), 0) for r in g_ge + k_ge]
    nonneg = g_nn + k_nn

    if k_rep[0] == "V":
        fan_base = [tuple(Fraction(x) for x in v) for v in list(k_rep[1]) + list(k_rep[2])]
    else:
        fan_base = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    fan = []
    for v in fan_base:
        fan.append(v)
        fan.append(tuple(-x for x in v))
    for c in fan:
        norm = (dense({i: c[i] for i in range(n) if c[i]}), 1)
        res = solve_lp(nv, eq=eq_rows + [norm], ge=ge_rows, nonneg=nonneg)
        if res.status == "optimal":
            return tuple(res.x[:n])
    return None


def check_dual_dichotomy(h: ConvexProcess, lambda_samples: Sequence) -> bool:
    """True iff each sample is an eigenvalue of ``H`` or of its negative dual.

    Raises
    ------
    PreconditionError
        If ``H`` is an n-dimensional linear process, where the dichotomy need not hold.
    """
    if is_n_dim_linear(h):
        raise PreconditionError("the process is an n-dimensional linear process")
    full = PolyhedralCone.full(h.n)
    hd = dual(h)
    for lam in lambda_samples:
        if not (is_eigenvalue_in(h, full, lam)[0] or is_eigenvalue_in(hd, full, lam)[0]):
            return False
    return True


def spectral_upper_bound(h: ConvexProcess, k: PolyhedralCone) -> Fraction:
    """A rational ``M >= 0`` with ``sigma(H, K) cap [0, inf) subset [0, M]``.

    Requires ``H(0) cap K = {0}``.  For ``lam >= 0`` an eigenpair gives
    ``(xi, lam xi) in G = gr(H) cap (K x K)``; with ``|xi|_inf = 1`` this forces
    ``lam <= max { |y|_inf : (x, y) in G, |x|_inf <= 1 }``, which is a finite
    maximum of exact LPs (bounded because ``G`` meets ``{0} x Q^n`` only at 0).

    Raises
    ------
    PreconditionError
        If ``H(0) cap K`` is not trivial.
    """
    from .processes import at_zero, restrict

    n = h.n
    if not intersect(at_zero(h), k).is_trivial():
        raise PreconditionError("H(0) cap K is not {0}; the spectrum need not be bounded above")
    g = restrict(h, k).graph
    ineqs, eqs = g.h_rep()
    eq_rows = [(list(e), 0) for e in eqs.basis]
    ge_rows = [(list(a), 0) for a in ineqs]
    for i in range(n):
        up = [0] * (2 * n)
        up[i] = -1
        lo = [0] * (2 * n)
        lo[i] = 1
        ge_rows.append((up, -1))
        ge_rows.append((lo, -1))
    best = Fraction(0)
    for j in range(n):
        for sign in (1, -1):
            obj = [0] * (2 * n)
            obj[n + j] = sign
            res = solve_lp(2 * n, eq=eq_rows, ge=ge_rows, objective=obj, maximize=True)
            if res.status == "unbounded":  # pragma: no cover - excluded by the precondition
                raise AssertionError("unbounded spectral LP despite H(0) cap K = {0}")
            if res.status == "optimal" and res.value > best:
                best = res.value
    return best


def grid_points(lo, hi, count: int) -> list[Fraction]:
    lo, hi = as_fraction(lo), as_fraction(hi)
    if count == 1:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


__all__ = [
    "eigencone",
    "is_eigenvalue_in",
    "SpectrumQuery",
    "SpectrumReport",
    "SpectrumInterval",
    "Endpoint",
    "spectrum_scan",
    "oracle_eigenpair_search",
    "check_dual_dichotomy",
    "spectral_upper_bound",
    "grid_points",
]
