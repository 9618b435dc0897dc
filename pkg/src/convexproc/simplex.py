"""Exact two-phase simplex over the rationals (Bland's rule, dense tableau).

Only used at desk scale: as an independent feasibility oracle for eigenpairs
and to bound spectra from above.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

_ZERO = Fraction(0)


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple | None = None
    value: Fraction | None = None


def _pivot(tab, basis, r, c):
    piv = tab[r][c]
    tab[r] = [v / piv for v in tab[r]]
    row_r = tab[r]
    for i, row in enumerate(tab):
        if i != r and row[c] != 0:
            f = row[c]
            tab[i] = [a - f * b for a, b in zip(row, row_r)]
    basis[r] = c


def _run(tab, basis, allowed):
    """Minimize the objective stored in the last row; columns not in ``allowed`` never enter."""
    obj = tab[-1]
    while True:
        obj = tab[-1]
        enter = next((j for j in allowed if obj[j] < 0), None)
        if enter is None:
            return "optimal"
        best = None
        leave = None
        for i in range(len(tab) - 1):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return "unbounded"
        _pivot(tab, basis, leave, enter)


def linprog_standard(c: Sequence, a_eq: Sequence[Sequence], b_eq: Sequence) -> LPResult:
    """Minimize ``c.x`` subject to ``A x = b``, ``x >= 0``."""
    nv = len(c)
    rows = [[Fraction(v) for v in r] for r in a_eq]
    rhs = [Fraction(v) for v in b_eq]
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    m = len(rows)
    # phase 1: artificial columns nv .. nv+m-1
    tab = []
    for i, r in enumerate(rows):
        tab.append(r + [Fraction(int(i == k)) for k in range(m)] + [rhs[i]])
    obj = [_ZERO] * (nv + m + 1)
    for i in range(m):
        obj = [o - t for o, t in zip(obj, tab[i])]
    for k in range(m):
        obj[nv + k] = _ZERO
    tab.append(obj)
    basis = [nv + i for i in range(m)]
    _run(tab, basis, range(nv + m))
    if tab[-1][-1] != 0:
        return LPResult("infeasible")
    # drive artificials out of the basis
    i = 0
    while i < len(basis):
        if basis[i] >= nv:
            j = next((j for j in range(nv) if tab[i][j] != 0), None)
            if j is None:
                del tab[i]
                del basis[i]
                continue
            _pivot(tab, basis, i, j)
        i += 1
    # phase 2
    tab = [r[:nv] + [r[-1]] for r in tab[:-1]]
    cost = [Fraction(v) for v in c] + [_ZERO]
    for i, b in enumerate(basis):
        if cost[b] != 0:
            f = cost[b]
            cost = [a - f * t for a, t in zip(cost, tab[i])]
    tab.append(cost)
    status = _run(tab, basis, range(nv))
    if status == "unbounded":
        return LPResult("unbounded")
    x = [_ZERO] * nv
    for i, b in enumerate(basis):
        x[b] = tab[i][-1]
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), _ZERO)
    return LPResult("optimal", tuple(x), value)


def solve_lp(
    nvars: int,
    *,
    eq: Sequence[tuple[Sequence, object]] = (),
    ge: Sequence[tuple[Sequence, object]] = (),
    nonneg: Sequence[int] = (),
    objective: Sequence | None = None,
    maximize: bool = False,
) -> LPResult:
    """General-form exact LP.

    Variables are free unless listed in ``nonneg``.  ``eq`` and ``ge`` hold
    ``(row, rhs)`` pairs meaning ``row.x = rhs`` and ``row.x >= rhs``.  With
    no objective this is a pure feasibility problem.
    """
    nonneg = set(nonneg)
    # column map: each free var -> (plus, minus); nonneg var -> single column
    cols: list[tuple[int, int | None]] = []
    k = 0
    for v in range(nvars):
        if v in nonneg:
            cols.append((k, None))
            k += 1
        else:
            cols.append((k, k + 1))
            k += 2
    nslack = len(ge)
    total = k + nslack

    def expand(row):
        out = [_ZERO] * total
        for v, a in enumerate(row):
            a = Fraction(a)
            if a == 0:
                continue
            p, m = cols[v]
            out[p] += a
            if m is not None:
                out[m] -= a
        return out

    a_rows, b = [], []
    for row, rhs in eq:
        a_rows.append(expand(row))
        b.append(Fraction(rhs))
    for s, (row, rhs) in enumerate(ge):
        r = expand(row)
        r[k + s] = Fraction(-1)
        a_rows.append(r)
        b.append(Fraction(rhs))
    c = [_ZERO] * total
    if objective is not None:
        sign = -1 if maximize else 1
        c = expand([sign * Fraction(v) for v in objective])
    res = linprog_standard(c, a_rows, b)
    if res.status != "optimal":
        return res
    x = []
    for p, m in cols:
        x.append(res.x[p] - (res.x[m] if m is not None else 0))
    value = None
    if objective is not None:
        value = sum((Fraction(o) * xi for o, xi in zip(objective, x)), _ZERO)
    return LPResult("optimal", tuple(x), value)
