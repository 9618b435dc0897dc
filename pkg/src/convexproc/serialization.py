"""JSON-compatible literals for cones, subspaces, processes and systems.

Rationals are written as ``"p/q"`` or ``"p"`` strings; integers are also
accepted on input, floats never.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any

from .cones import PolyhedralCone
from .control import LinearSystem
from .errors import DimensionError
from .linalg import RationalMatrix, Subspace, as_fraction, format_fraction
from .processes import ConvexProcess


class LiteralError(ValueError):
    """Malformed literal; ``path`` locates the offending entry."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _rational(x, path):
    try:
        return as_fraction(x)
    except (TypeError, ValueError) as exc:
        raise LiteralError(path, str(exc)) from None


def _vectors(rows, dim, path):
    if not isinstance(rows, list):
        raise LiteralError(path, "expected a list of vectors")
    out = []
    for i, r in enumerate(rows):
        if not isinstance(r, list):
            raise LiteralError(f"{path}[{i}]", "expected a list of rationals")
        if len(r) != dim:
            raise LiteralError(f"{path}[{i}]", f"vector of length {len(r)}, expected {dim}")
        out.append(tuple(_rational(x, f"{path}[{i}][{j}]") for j, x in enumerate(r)))
    return out


def _dim(obj, key, path):
    d = obj.get(key)
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        raise LiteralError(f"{path}.{key}", "expected a nonnegative integer")
    return d


def _strs(v):
    return [format_fraction(Fraction(x)) for x in v]


# -- cones ----------------------------------------------------------------------

def cone_from_literal(obj: Any, path: str = "cone") -> PolyhedralCone:
    if not isinstance(obj, dict):
        raise LiteralError(path, "expected an object")
    dim = _dim(obj, "dim", path)
    has_v = "rays" in obj or "lineality" in obj
    has_h = "ineqs" in obj or "eqs" in obj
    if has_v and has_h:
        raise LiteralError(path, "give either rays/lineality or ineqs/eqs, not both")
    if has_h:
        return PolyhedralCone.from_constraints(
            dim, _vectors(obj.get("ineqs", []), dim, f"{path}.ineqs"), _vectors(obj.get("eqs", []), dim, f"{path}.eqs")
        )
    return PolyhedralCone.from_generators(
        dim, _vectors(obj.get("rays", []), dim, f"{path}.rays"), _vectors(obj.get("lineality", []), dim, f"{path}.lineality")
    )


def cone_to_literal(c: PolyhedralCone, form: str = "V") -> dict:
    """Canonical literal: ``form="V"`` gives rays and lineality, ``"H"`` gives ineqs and eqs."""
    if form == "V":
        rays, lin = c.v_rep()
        return {"dim": c.dim, "rays": [_strs(r) for r in rays], "lineality": [_strs(b) for b in lin.basis]}
    ineqs, eqs = c.h_rep()
    return {"dim": c.dim, "ineqs": [_strs(a) for a in ineqs], "eqs": [_strs(b) for b in eqs.basis]}


# -- subspaces --------------------------------------------------------------------

def subspace_from_literal(obj: Any, path: str = "subspace") -> Subspace:
    if not isinstance(obj, dict):
        raise LiteralError(path, "expected an object")
    dim = _dim(obj, "dim", path)
    return Subspace(dim, _vectors(obj.get("basis", []), dim, f"{path}.basis"))


def subspace_to_literal(s: Subspace) -> dict:
    return {"dim": s.ambient_dim, "basis": [_strs(b) for b in s.basis]}


# -- processes ------------------------------------------------------------------

def process_from_literal(obj: Any, path: str = "process") -> ConvexProcess:
    if not isinstance(obj, dict):
        raise LiteralError(path, "expected an object")
    n = _dim(obj, "n", path)
    if "graph" not in obj:
        raise LiteralError(path, "missing 'graph'")
    g = cone_from_literal(obj["graph"], f"{path}.graph")
    if g.dim != 2 * n:
        raise LiteralError(f"{path}.graph", f"graph dimension {g.dim} does not match 2n = {2 * n}")
    return ConvexProcess(n, g)


def process_to_literal(h: ConvexProcess) -> dict:
    return {"n": h.n, "graph": cone_to_literal(h.graph, "V")}


# -- systems ----------------------------------------------------------------------

def _matrix(rows, path, ncols=None):
    if not isinstance(rows, list):
        raise LiteralError(path, "expected a list of rows")
    if ncols is None:
        if not rows:
            raise LiteralError(path, "cannot infer the width of an empty matrix")
        if not isinstance(rows[0], list):
            raise LiteralError(f"{path}[0]", "expected a list of rationals")
        ncols = len(rows[0])
    return RationalMatrix(_vectors(rows, ncols, path), ncols)


def system_from_literal(obj: Any, path: str = "system") -> LinearSystem:
    if not isinstance(obj, dict):
        raise LiteralError(path, "expected an object")
    for key in "ABCD":
        if key not in obj:
            raise LiteralError(path, f"missing matrix {key!r}")
    a = _matrix(obj["A"], f"{path}.A")
    n = a.nrows
    # empty B or C need explicit widths: infer from the other matrices
    m = obj.get("m")
    if m is None:
        m = len(obj["B"][0]) if obj["B"] and isinstance(obj["B"][0], list) else (
            len(obj["D"][0]) if obj["D"] and isinstance(obj["D"][0], list) else 0
        )
    b = _matrix(obj["B"], f"{path}.B", m) if obj["B"] else RationalMatrix.zeros(n, m)
    c = _matrix(obj["C"], f"{path}.C", n)
    d = _matrix(obj["D"], f"{path}.D", m) if obj["D"] else RationalMatrix.zeros(c.nrows, m)
    try:
        return LinearSystem(a, b, c, d)
    except DimensionError as exc:
        raise LiteralError(path, str(exc)) from None


def system_to_literal(s: LinearSystem) -> dict:
    return {"A": s.A.to_strings(), "B": s.B.to_strings(), "C": s.C.to_strings(), "D": s.D.to_strings(), "m": s.m}


def matrix_to_literal(m: RationalMatrix) -> list:
    return m.to_strings()


__all__ = [
    "LiteralError",
    "cone_from_literal",
    "cone_to_literal",
    "subspace_from_literal",
    "subspace_to_literal",
    "process_from_literal",
    "process_to_literal",
    "system_from_literal",
    "system_to_literal",
]
