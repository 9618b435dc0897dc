"""Command-line front end.

Every command reads one input document (JSON with ``processes``, ``cones``,
``subspaces``, ``systems`` and optional ``queries``), merged over the
shipped fixtures, and writes a deterministic document or a text rendering.

Exit codes: 0 success, 1 assumptions not met / oracle disagreement,
2 parse or validation error, 3 irrational root split.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from . import fixtures
from .cones import PolyhedralCone
from .errors import DimensionError
from .linalg import Subspace, as_fraction, format_fraction
from .processes import ConvexProcess, dual, inverse, power, reduce, restrict
from .serialization import (
    LiteralError,
    cone_from_literal,
    process_from_literal,
    process_to_literal,
    subspace_from_literal,
)
from .spectrum import (
    SpectrumQuery,
    grid_points,
    is_eigenvalue_in,
    oracle_eigenpair_search,
    spectrum_scan,
)
from .verifier import Conclusion, theorem_conclusions


class InputError(Exception):
    """Parse or validation failure; rendered as ``<source>:<line>: <message>``."""

    def __init__(self, message: str, line: int | None = None, source: str = "input"):
        self.message, self.line, self.source = message, line, source
        super().__init__(self.render())

    def render(self) -> str:
        where = f"{self.source}:{self.line}" if self.line is not None else self.source
        return f"{where}: {self.message}"


@dataclass
class CommandResult:
    document: Any
    text: str
    code: int = 0


# -- input document -------------------------------------------------------------

class InputDocument:
    def __init__(self, data: dict, raw: str = "", source: str = "input"):
        self.data, self.raw, self.source = data, raw, source

    @classmethod
    def load(cls, path: str | None) -> "InputDocument":
        base = fixtures.document()
        if path is None:
            return cls(base, "", "fixtures")
        source = "<stdin>" if path == "-" else path
        try:
            raw = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        except OSError as exc:
            raise InputError(str(exc), None, source) from None
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc.msg} (column {exc.colno})", exc.lineno, source) from None
        if not isinstance(data, dict):
            raise InputError("top level must be an object", 1, source)
        for key in ("processes", "cones", "subspaces", "systems"):
            section = data.get(key, {})
            if not isinstance(section, dict):
                raise InputError(f"'{key}' must be an object", _locate(raw, [key]), source)
            base[key].update(section)
        base["queries"] = data.get("queries", [])
        return cls(base, raw, source)

    def error(self, message: str, path: list[str]) -> InputError:
        return InputError(message, _locate(self.raw, path), self.source)

    def _literal(self, section: str, name: str, parse):
        table = self.data.get(section, {})
        if name not in table:
            raise self.error(f"unknown name {name!r} in {section}", [section])
        try:
            return parse(table[name], f"{section}.{name}")
        except (LiteralError, DimensionError) as exc:
            path = getattr(exc, "path", f"{section}.{name}")
            raise self.error(str(exc), path.replace("[", ".[").split(".")) from None

    def process(self, name: str) -> ConvexProcess:
        return self._literal("processes", name, process_from_literal)

    def cone(self, name: str) -> PolyhedralCone:
        return self._literal("cones", name, cone_from_literal)

    def subspace(self, name: str) -> Subspace:
        if name in self.data.get("subspaces", {}):
            return self._literal("subspaces", name, subspace_from_literal)
        c = self.cone(name)
        if not c.is_subspace():
            raise self.error(f"cone {name!r} is not a subspace", ["cones", name])
        return c.lineality

    def query(self, command: str) -> dict:
        for q in self.data.get("queries", []):
            if isinstance(q, dict) and q.get("command") == command:
                return q
        return {}


def _locate(raw: str, path: list[str]) -> int | None:
    """Best-effort line of the innermost object key along ``path``."""
    if not raw:
        return None
    pos, found = 0, None
    for part in path:
        if not part or part.startswith("["):
            continue
        i = raw.find(f'"{part}"', pos)
        if i < 0:
            break
        pos, found = i, i
    return None if found is None else raw.count("\n", 0, found) + 1


# -- argument helpers -------------------------------------------------------------

def _rational_arg(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _pick(args, q: dict, attr: str, key: str | None = None, default=None):
    v = getattr(args, attr, None)
    if v is not None:
        return v
    return q.get(key or attr, default)


def _fractions(values, what: str, doc: InputDocument) -> list[Fraction]:
    try:
        return [as_fraction(v) for v in values]
    except (TypeError, ValueError) as exc:
        raise doc.error(f"{what}: {exc}", ["queries", what]) from None


def _names(args, doc: InputDocument, command: str, need_cone: bool = True):
    q = doc.query(command)
    pname = _pick(args, q, "process")
    if pname is None:
        raise InputError("no process named (use --process or a query block)", None, doc.source)
    h = doc.process(pname)
    k = None
    if need_cone:
        cname = _pick(args, q, "cone", default=pname)
        k = doc.cone(cname)
        if k.dim != h.n:
            raise doc.error(f"cone {cname!r} lives in Q^{k.dim}, process {pname!r} in Q^{h.n}", ["cones", cname])
    return q, h, k


def _vec_text(v) -> str:
    return "(" + ", ".join(format_fraction(Fraction(x)) for x in v) + ")"


def _process_result(h: ConvexProcess) -> CommandResult:
    doc = process_to_literal(h)
    lines = [f"process on Q^{h.n}"]
    lines += [f"  ray {_vec_text(r)}" for r in h.graph.rays]
    lines += [f"  lineality {_vec_text(b)}" for b in h.graph.lineality.basis]
    return CommandResult(doc, "\n".join(lines) + "\n")


# -- commands -------------------------------------------------------------------

def cmd_dual(args, doc: InputDocument) -> CommandResult:
    _, h, _ = _names(args, doc, "dual", need_cone=False)
    return _process_result(dual(h))


def cmd_inverse(args, doc: InputDocument) -> CommandResult:
    _, h, _ = _names(args, doc, "inverse", need_cone=False)
    return _process_result(inverse(h))


def cmd_power(args, doc: InputDocument) -> CommandResult:
    q, h, _ = _names(args, doc, "power", need_cone=False)
    exponent = _pick(args, q, "q", default=1)
    if not isinstance(exponent, int) or exponent < 0:
        raise doc.error("power exponent q must be a nonnegative integer", ["queries", "q"])
    return _process_result(power(h, exponent))


def cmd_restrict(args, doc: InputDocument) -> CommandResult:
    _, h, k = _names(args, doc, "restrict")
    return _process_result(restrict(h, k))


def _w_arg(args, q, doc, k) -> Subspace | None:
    wname = _pick(args, q, "w_name", "w")
    if wname is None:
        return None
    w = doc.subspace(wname)
    if w.ambient_dim != k.dim:
        raise doc.error(f"subspace {wname!r} lives in Q^{w.ambient_dim}, expected Q^{k.dim}", [wname])
    return w


def cmd_reduce(args, doc: InputDocument) -> CommandResult:
    q, h, k = _names(args, doc, "reduce")
    w = _w_arg(args, q, doc, k)
    return _process_result(reduce(h, k, k.lin() if w is None else w))


def cmd_spectrum(args, doc: InputDocument) -> CommandResult:
    q, h, k = _names(args, doc, "spectrum")
    lo, hi = _fractions(_pick(args, q, "range", default=("0", "4")), "range", doc)
    grid = _pick(args, q, "grid", default=17)
    tol = _fractions([_pick(args, q, "tol", default="1/1024")], "tol", doc)[0]
    try:
        query = SpectrumQuery(h, k, (lo, hi), grid, tol)
    except (ValueError, TypeError) as exc:
        raise doc.error(f"invalid spectrum query: {exc}", ["queries", "spectrum"]) from None
    report = spectrum_scan(query)
    lines = []
    for iv in report.intervals:
        lines.append(
            f"interval [{format_fraction(iv.lo.value)}, {format_fraction(iv.hi.value)}]"
            f" (lo {iv.lo.status}, hi {iv.hi.status})"
        )
    if not report.intervals:
        lines.append("no spectrum member on the grid")
    for lam, xi in report.exact_members:
        lines.append(f"member {format_fraction(lam)} eigenvector {_vec_text(xi)}")
    return CommandResult(report.to_document(), "\n".join(lines) + "\n")


def cmd_verify(args, doc: InputDocument) -> CommandResult:
    q, h, k = _names(args, doc, "verify")
    w = _w_arg(args, q, doc, k)
    against = _pick(args, q, "against", default="hat")
    lams = _pick(args, q, "lambda_", "lambda")
    grid = None if lams is None else _fractions(lams, "lambda", doc)
    report = theorem_conclusions(h, k, w, against=against, lambda_grid=grid)
    if report.split_not_rational:
        code = 3
    elif report.theorem_conclusion is Conclusion.ASSUMPTIONS_NOT_MET:
        code = 1
    else:
        code = 0
    return CommandResult(report.to_document(), report.to_text(), code)


def cmd_oracle(args, doc: InputDocument) -> CommandResult:
    q, h, k = _names(args, doc, "oracle")
    lams = _pick(args, q, "lambda_", "lambda")
    if lams is None:
        lo, hi = _fractions(_pick(args, q, "range", default=("0", "4")), "range", doc)
        lams = grid_points(lo, hi, _pick(args, q, "grid", default=17))
    lams = _fractions(lams, "lambda", doc)
    rows, lines, code = [], [], 0
    for lam in lams:
        fast = is_eigenvalue_in(h, k, lam)[0]
        slow = oracle_eigenpair_search(h, k, lam) is not None
        agree = fast == slow
        code = code or (0 if agree else 1)
        rows.append({"lambda": format_fraction(lam), "fast": fast, "oracle": slow, "agree": agree})
        lines.append(f"{format_fraction(lam):>10}  fast={fast!s:<5}  oracle={slow!s:<5}  {'agree' if agree else 'DISAGREE'}")
    return CommandResult({"rows": rows, "all_agree": code == 0}, "\n".join(lines) + "\n", code)


COMMANDS = {
    "dual": cmd_dual,
    "inverse": cmd_inverse,
    "power": cmd_power,
    "restrict": cmd_restrict,
    "reduce": cmd_reduce,
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default=argparse.SUPPRESS, help="input document path or '-' (default: shipped fixtures)")
    common.add_argument("--output", default=argparse.SUPPRESS, help="output path or '-' (default: stdout)")
    common.add_argument("--format", choices=("document", "text"), default=argparse.SUPPRESS)
    common.add_argument("--process", default=argparse.SUPPRESS, help="process name")
    common.add_argument("--cone", default=argparse.SUPPRESS, help="cone name (default: same as --process)")

    parser = argparse.ArgumentParser(prog="convexproc", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("dual", "inverse", "restrict"):
        sub.add_parser(name, parents=[common])
    p = sub.add_parser("power", parents=[common])
    p.add_argument("--q", type=int)
    p = sub.add_parser("reduce", parents=[common])
    p.add_argument("--w-name", dest="w_name")
    p = sub.add_parser("spectrum", parents=[common])
    p.add_argument("--range", nargs=2, type=_rational_arg, metavar=("LO", "HI"))
    p.add_argument("--grid", type=int)
    p.add_argument("--tol", type=_rational_arg)
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--w-name", dest="w_name")
    p.add_argument("--against", choices=("hat", "minimal"))
    p.add_argument("--lambda", dest="lambda_", action="append", type=_rational_arg)
    p = sub.add_parser("oracle", parents=[common])
    p.add_argument("--lambda", dest="lambda_", action="append", type=_rational_arg)
    p.add_argument("--range", nargs=2, type=_rational_arg, metavar=("LO", "HI"))
    p.add_argument("--grid", type=int)
    return parser


def run(argv: list[str] | None = None) -> tuple[int, str, str | None]:
    """Parse, dispatch and render; returns (exit code, rendered output, output path)."""
    args = build_parser().parse_args(argv)
    dest = getattr(args, "output", None)
    try:
        doc = InputDocument.load(getattr(args, "input", None))
        result = COMMANDS[args.command](args, doc)
    except InputError as exc:
        return 2, exc.render() + "\n", None
    if getattr(args, "format", "document") == "text":
        out = result.text
    else:
        out = json.dumps(result.document, sort_keys=True, indent=2) + "\n"
    return result.code, out, dest


def main(argv: list[str] | None = None) -> int:
    code, out, dest = run(argv)
    if code == 2:
        sys.stderr.write(out)
    elif dest and dest != "-":
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
