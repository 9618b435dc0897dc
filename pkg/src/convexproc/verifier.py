"""Hypothesis checking and theorem application for eigenvectors outside lin(K)."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .cones import PolyhedralCone, intersect
from .control import (
    check_stab_condition,
    check_weak_inv_condition,
    realize,
    stabilizable_weakly_unobservable,
)
from .errors import DimensionError, PreconditionError, SplitNotRational
from .linalg import Subspace, format_fraction
from .processes import (
    ConvexProcess,
    LinearProcess,
    at_zero,
    is_eigenpair,
    is_weakly_invariant,
    minimal_linear,
    reduce,
)
from .spectrum import ceil_fraction, eigencone, is_eigenvalue_in, spectral_upper_bound


class Conclusion(enum.Enum):
    K_EQUALS_LINK = "K_EQUALS_LINK"
    EIGENVECTOR_EXISTS_OUTSIDE_LINK = "EIGENVECTOR_EXISTS_OUTSIDE_LINK"
    UNRESOLVED_ON_GRID = "UNRESOLVED_ON_GRID"
    ASSUMPTIONS_NOT_MET = "ASSUMPTIONS_NOT_MET"


def _fmt_vec(v):
    return [format_fraction(Fraction(x)) for x in v]


def _fmt_subspace(s: Subspace | None):
    return None if s is None else [_fmt_vec(b) for b in s.basis]


def _span_text(s: Subspace | None) -> str:
    if s is None:
        return "undetermined"
    if s.dim == 0:
        return "{0}"
    return "span{" + ", ".join("(" + ", ".join(_fmt_vec(b)) + ")" for b in s.basis) + "}"


@dataclass
class VerificationReport:
    k_weakly_invariant: bool
    k_invariance_witness: tuple | None
    h0_cap_k_is_subspace: bool
    lin_k: Subspace
    w: Subspace | None
    w_is_w_star: bool
    w_star: Subspace | None
    split_not_rational: bool = False
    split_message: str | None = None
    containment_h0k_in_w: bool | None = None
    w_in_k: bool | None = None
    hypothesis_a: bool | None = None
    hypothesis_b: bool | None = None
    hypothesis_c: bool | None = None
    against: str = "hat"
    theorem_conclusion: Conclusion | None = None
    certificate: tuple[Fraction, tuple] | None = None
    lambda_grid_max: Fraction | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def assumptions_hold(self) -> bool:
        return bool(
            self.k_weakly_invariant
            and self.h0_cap_k_is_subspace
            and self.hypothesis_a
            and self.hypothesis_b
            and self.hypothesis_c
        )

    def to_document(self) -> dict:
        doc = {
            "k_weakly_invariant": self.k_weakly_invariant,
            "k_invariance_witness": None if self.k_invariance_witness is None else _fmt_vec(self.k_invariance_witness),
            "h0_cap_k_is_subspace": self.h0_cap_k_is_subspace,
            "lin_k": _fmt_subspace(self.lin_k),
            "w": _fmt_subspace(self.w),
            "w_is_w_star": self.w_is_w_star,
            "w_star": _fmt_subspace(self.w_star),
            "split_not_rational": self.split_not_rational,
            "containment_h0k_in_w": self.containment_h0k_in_w,
            "w_in_k": self.w_in_k,
            "hypothesis_a": self.hypothesis_a,
            "hypothesis_b": self.hypothesis_b,
            "hypothesis_c": self.hypothesis_c,
            "checked_against": self.against,
            "assumptions_hold": self.assumptions_hold,
            "theorem_conclusion": None if self.theorem_conclusion is None else self.theorem_conclusion.value,
            "certificate": None
            if self.certificate is None
            else {"lambda": format_fraction(self.certificate[0]), "eigenvector": _fmt_vec(self.certificate[1])},
            "notes": list(self.notes),
        }
        if self.split_message:
            doc["split_message"] = self.split_message
        if self.lambda_grid_max is not None:
            doc["lambda_grid_max"] = format_fraction(self.lambda_grid_max)
        return doc

    def to_text(self) -> str:
        def flag(v):
            return "undetermined" if v is None else ("yes" if v else "no")

        lines = [
            f"K weakly H-invariant: {flag(self.k_weakly_invariant)}",
            f"H(0) cap K is a subspace: {flag(self.h0_cap_k_is_subspace)}",
            f"lin(K) = {_span_text(self.lin_k)}",
            f"W* = {_span_text(self.w_star)}",
            f"W ({'W*' if self.w_is_w_star else 'given'}) = {_span_text(self.w)}",
        ]
        if self.split_not_rational:
            lines.append(f"split not rational: {self.split_message}")
        lines += [
            f"(a) H(0) cap K subset W subset K: {flag(self.hypothesis_a)}",
            f"(b) W weakly invariant under the {self.against} linear process: {flag(self.hypothesis_b)}",
            f"(c) W subset (L - lam I) W for all lam >= 0: {flag(self.hypothesis_c)}",
        ]
        if self.theorem_conclusion is not None:
            lines.append(f"conclusion: {self.theorem_conclusion.value}")
        if self.certificate is not None:
            lam, xi = self.certificate
            lines.append(f"certificate: lambda = {format_fraction(lam)}, xi = ({', '.join(_fmt_vec(xi))})")
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines) + "\n"


def _graph_of_subspace_pair(n: int, u: Subspace, v: Subspace) -> Subspace:
    return Subspace(2 * n, [tuple(b) + (0,) * n for b in u.basis] + [(0,) * n + tuple(b) for b in v.basis])


def hat_linear_process(h: ConvexProcess, k: PolyhedralCone) -> LinearProcess:
    """``L_hat``: graph ``lin(gr H) cap (lin K x lin K)``."""
    if k.dim != h.n:
        raise DimensionError(f"cone in Q^{k.dim} for a process on Q^{h.n}")
    lk = k.lin()
    return LinearProcess(h.n, h.graph.lin() & _graph_of_subspace_pair(h.n, lk, lk))


def compute_W_star(h: ConvexProcess, k: PolyhedralCone) -> Subspace:
    """``V_g`` of a realization of ``L_hat``.  Propagates ``SplitNotRational``."""
    return stabilizable_weakly_unobservable(realize(hat_linear_process(h, k)))


def _reference_process(h: ConvexProcess, k: PolyhedralCone, against: str) -> LinearProcess:
    if against == "hat":
        return hat_linear_process(h, k)
    if against == "minimal":
        return minimal_linear(h)
    raise ValueError(f"unknown reference process {against!r}; use 'hat' or 'minimal'")


def _subspace_in_cone(w: Subspace, k: PolyhedralCone) -> bool:
    return all(k.contains(b) and k.contains([-x for x in b]) for b in w.basis)


def _cone_in_subspace(c: PolyhedralCone, w: Subspace) -> bool:
    return all(w.contains(g) for g in c.generators())


def _conditions(h, k, w, against):
    """Flags (a), (b), (c) plus the two halves of (a)."""
    h0k = intersect(at_zero(h), k)
    lower = _cone_in_subspace(h0k, w)
    upper = _subspace_in_cone(w, k)
    sysm = realize(_reference_process(h, k, against))
    b = check_weak_inv_condition(sysm, w)
    c = check_stab_condition(sysm, w)
    return lower, upper, lower and upper, b, c


def verify_assumptions(
    h: ConvexProcess, k: PolyhedralCone, w: Subspace | None = None, *, against: str = "hat"
) -> VerificationReport:
    """Evaluate every hypothesis exactly for ``W`` (default ``W*``).

    If ``W*`` is needed but cannot be computed because of an irrational
    root split, the report carries ``split_not_rational`` and the
    W-dependent flags stay undetermined.
    """
    if k.dim != h.n:
        raise DimensionError(f"cone in Q^{k.dim} for a process on Q^{h.n}")
    inv, witness = is_weakly_invariant(h, k)
    h0k = intersect(at_zero(h), k)
    report = VerificationReport(
        k_weakly_invariant=inv,
        k_invariance_witness=witness,
        h0_cap_k_is_subspace=h0k.is_subspace(),
        lin_k=k.lin(),
        w=None,
        w_is_w_star=w is None,
        w_star=None,
        against=against,
    )
    try:
        report.w_star = compute_W_star(h, k)
    except SplitNotRational as exc:
        report.split_not_rational = True
        report.split_message = str(exc)
    if w is None:
        w = report.w_star
    if w is None:
        return report
    if w.ambient_dim != h.n:
        raise DimensionError("W and process dimensions differ")
    report.w = w
    lower, upper, a, b, c = _conditions(h, k, w, against)
    report.containment_h0k_in_w = lower
    report.w_in_k = upper
    report.hypothesis_a, report.hypothesis_b, report.hypothesis_c = a, b, c
    return report


def default_lambda_grid(h: ConvexProcess, k: PolyhedralCone, w: Subspace) -> list[Fraction]:
    """``j/8`` for ``j = 0..8*M``, ``M`` the spectral bound of the reduced process (8 if unavailable)."""
    kw = intersect(k, PolyhedralCone.from_subspace(w.perp()))
    try:
        top = max(ceil_fraction(spectral_upper_bound(reduce(h, k, w), kw)), 0)
    except PreconditionError:
        top = 8
    return [Fraction(j, 8) for j in range(8 * top + 1)]


def find_certificate(h: ConvexProcess, k: PolyhedralCone, lam) -> tuple | None:
    """An eigenvector of ``H`` for ``lam`` in ``K`` but outside ``lin K``, re-verified."""
    lk = k.lin()
    cap = intersect(eigencone(h, lam), k)
    for g in cap.generators():
        if not lk.contains(g) and k.contains(g) and is_eigenpair(h, lam, g):
            return tuple(g)
    return None


def theorem_conclusions(
    h: ConvexProcess,
    k: PolyhedralCone,
    w: Subspace | None = None,
    *,
    against: str = "hat",
    lambda_grid=None,
) -> VerificationReport:
    """Verify the hypotheses and apply the lin(K) theorem with ``W = lin K``.

    When the hypotheses hold for ``lin K`` and ``K != lin K``, a certificate
    ``(lam, xi)`` with ``lam >= 0`` and ``xi in K \\ lin K`` is searched on a
    grid: a member of the reduced spectrum points at ``lam`` and the
    eigenvector is then read off ``eigencone(H, lam) cap K``.  An empty
    search is reported as unresolved, never as a refutation.
    """
    report = verify_assumptions(h, k, w, against=against)
    lk = k.lin()
    inv_ok = report.k_weakly_invariant and report.h0_cap_k_is_subspace
    if not inv_ok:
        report.theorem_conclusion = Conclusion.ASSUMPTIONS_NOT_MET
        return report
    if report.w is not None and report.w == lk:
        ok = report.hypothesis_a and report.hypothesis_b and report.hypothesis_c
    else:
        _, _, a, b, c = _conditions(h, k, lk, against)
        ok = a and b and c
        report.notes.append(f"hypotheses for W = lin(K): (a) {a}, (b) {b}, (c) {c}")
    if not ok:
        report.theorem_conclusion = Conclusion.ASSUMPTIONS_NOT_MET
        return report
    if k.is_subspace():
        report.theorem_conclusion = Conclusion.K_EQUALS_LINK
        return report
    grid = default_lambda_grid(h, k, lk) if lambda_grid is None else [Fraction(x) for x in lambda_grid]
    grid = sorted(l for l in grid if l >= 0)
    report.lambda_grid_max = grid[-1] if grid else None
    kw = intersect(k, PolyhedralCone.from_subspace(lk.perp()))
    hkw = reduce(h, k, lk)
    for lam in grid:
        if not is_eigenvalue_in(hkw, kw, lam)[0]:
            continue
        xi = find_certificate(h, k, lam)
        if xi is None:  # pragma: no cover - excluded by the spectra equality
            report.notes.append(f"reduced spectrum contains {lam} but no outside eigenvector was found")
            continue
        report.certificate = (lam, xi)
        report.theorem_conclusion = Conclusion.EIGENVECTOR_EXISTS_OUTSIDE_LINK
        return report
    report.theorem_conclusion = Conclusion.UNRESOLVED_ON_GRID
    return report


__all__ = [
    "Conclusion",
    "VerificationReport",
    "hat_linear_process",
    "compute_W_star",
    "verify_assumptions",
    "theorem_conclusions",
    "find_certificate",
    "default_lambda_grid",
]
