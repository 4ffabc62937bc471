"""Command-line front end.

Quiver files are JSON objects with exactly three fields::

    {"vertices": 2, "dims": [2, 1], "arrows": [[0, 1, 4], [1, 2, 1]]}

``vertices`` is the number of non-source vertices, ``dims`` their
dimensions, and ``arrows`` a list of [i, j, multiplicity] triples with
0 <= i < j <= vertices; repeated (i, j) entries are summed.  Unknown fields
are rejected.

Exit codes: 0 success, 1 usage or parse error, 2 validation error,
3 verification failure.  Output is deterministic; repeated runs are
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import combinations_with_replacement

from . import mirror as mirror_mod
from .classical import ClassicalRing
from .expr import ExprError, evaluate_classical, evaluate_quantum, format_class
from .oracle import ToricOracle
from .quantum import QuantumRing
from .quiver import QuiverError, QuiverSpec


class UsageError(Exception):
    pass


class FileFormatError(Exception):
    pass


def parse_quiver_file(path: str) -> QuiverSpec:
    """Load and validate a quiver file; raises FileFormatError with the
    offending location on malformed input, QuiverError on invalid quivers."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise FileFormatError(f"{path}: expected a JSON object")
    unknown = set(data) - {"vertices", "dims", "arrows"}
    if unknown:
        raise FileFormatError(f"{path}: unknown fields: {', '.join(sorted(unknown))}")
    missing = {"vertices", "dims", "arrows"} - set(data)
    if missing:
        raise FileFormatError(f"{path}: missing fields: {', '.join(sorted(missing))}")
    rho, dims, arrows = data["vertices"], data["dims"], data["arrows"]
    if not isinstance(rho, int) or not isinstance(dims, list) or len(dims) != rho:
        raise FileFormatError(f"{path}: dims must list exactly {rho!r} integers")
    table: dict[tuple[int, int], int] = {}
    for entry in arrows:
        if not (isinstance(entry, list) and len(entry) == 3 and all(isinstance(v, int) for v in entry)):
            raise FileFormatError(f"{path}: arrows entries must be [i, j, multiplicity] triples")
        i, j, m = entry
        table[(i, j)] = table.get((i, j), 0) + m
    return QuiverSpec(dims, table)


def _parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qflag", description="exact (quantum) cohomology of quiver flag varieties")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help, **kw):
        p = sub.add_parser(name, help=help)
        p.add_argument("-f", "--file", required=True, help="quiver file")
        p.add_argument("--order", choices=("deg", "lex"), default="deg", help="term print order")
        return p

    add("info", "ranks, Fano flag, dimension, basis count")
    add("basis", "list the canonical basis")
    p = add("mult", "classical product of two class expressions")
    p.add_argument("a")
    p.add_argument("b")
    p = add("qmult", "quantum product of two class expressions")
    p.add_argument("a")
    p.add_argument("b")
    p = add("reduce", "canonical form of a class expression")
    p.add_argument("expr")
    p.add_argument("--quantum", action="store_true")
    add("pair", "Poincare pairing matrix on the basis")
    p = add("integrate", "integral of a classical class expression")
    p.add_argument("expr")
    p = add("verify", "check products against the toric model")
    p.add_argument("a", nargs="?")
    p.add_argument("b", nargs="?")
    p.add_argument("--quantum", action="store_true")
    p.add_argument("--all", action="store_true", help="verify every unordered basis pair")
    p = add("mirror", "Laurent superpotential")
    p.add_argument("--raw", action="store_true", help="unsolved potential with constraints")
    p.add_argument("--critical", action="store_true", help="critical-locus relations")
    return parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
        return _dispatch(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (FileFormatError, ExprError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (QuiverError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    spec = parse_quiver_file(args.file)
    cmd = args.command
    if cmd == "info":
        return _info(spec)
    if cmd == "basis":
        ring = ClassicalRing(spec)
        for t in ring.basis():
            print(format_class({t: 1}, spec, order=args.order))
        return 0
    if cmd == "mult":
        ring = ClassicalRing(spec)
        out = ring.multiply(evaluate_classical(args.a, ring), evaluate_classical(args.b, ring))
        print(format_class(out, spec, order=args.order))
        return 0
    if cmd == "qmult":
        ring = QuantumRing(spec)
        out = ring.multiply(evaluate_quantum(args.a, ring), evaluate_quantum(args.b, ring))
        print(format_class(out, spec, quantum=True, order=args.order))
        return 0
    if cmd == "reduce":
        if args.quantum:
            ring = QuantumRing(spec)
            print(format_class(evaluate_quantum(args.expr, ring), spec, quantum=True, order=args.order))
        else:
            ring = ClassicalRing(spec)
            print(format_class(evaluate_classical(args.expr, ring), spec, order=args.order))
        return 0
    if cmd == "pair":
        ring = ClassicalRing(spec)
        for row in ToricOracle(spec).pairing_matrix(ring):
            print(" ".join(str(Fraction(v)) for v in row))
        return 0
    if cmd == "integrate":
        ring = ClassicalRing(spec)
        value = ToricOracle(spec).integral(evaluate_classical(args.expr, ring))
        print(Fraction(value))
        return 0
    if cmd == "verify":
        return _verify(spec, args)
    if cmd == "mirror":
        return _mirror(spec, args)
    raise UsageError(f"unknown command {cmd!r}")


def _info(spec: QuiverSpec) -> int:
    print(f"vertices: {spec.rho}")
    print("dims:", " ".join(str(r) for r in spec.dims))
    arrows = [
        f"{i}->{j} x{m}"
        for i, row in enumerate(spec.mult)
        for j, m in enumerate(row)
        if m
    ]
    print("arrows:", ", ".join(arrows))
    print("s:", " ".join(str(spec.s(i)) for i in range(1, spec.rho + 1)))
    print("s_out:", " ".join(str(spec.s_out(i)) for i in range(1, spec.rho + 1)))
    print("fano:", "yes" if spec.is_fano else "no")
    print("dimension:", spec.dimension())
    print("basis count:", spec.basis_count())
    return 0


def _verify(spec: QuiverSpec, args) -> int:
    oracle = ToricOracle(spec)
    quantum = args.quantum
    ring = QuantumRing(spec) if quantum else ClassicalRing(spec)
    if args.all:
        basis = ring.basis()
        wrap = (lambda t: {((0,) * spec.rho, t): 1}) if quantum else (lambda t: {t: 1})
        failures = []
        pairs = list(combinations_with_replacement(basis, 2))
        for ta, tb in pairs:
            claimed = ring.multiply(wrap(ta), wrap(tb))
            if not oracle.verify_product(wrap(ta), wrap(tb), claimed, quantum):
                failures.append((ta, tb))
        for ta, tb in failures:
            a = format_class(wrap(ta), spec, quantum=quantum)
            b = format_class(wrap(tb), spec, quantum=quantum)
            print(f"FAIL: {a} * {b}")
        if failures:
            print(f"FAIL {len(failures)}/{len(pairs)}")
            return 3
        print(f"PASS {len(pairs)}/{len(pairs)}")
        return 0
    if args.a is None or args.b is None:
        raise UsageError("verify needs two expressions or --all")
    if quantum:
        a = evaluate_quantum(args.a, ring)
        b = evaluate_quantum(args.b, ring)
    else:
        a = evaluate_classical(args.a, ring)
        b = evaluate_classical(args.b, ring)
    claimed = ring.multiply(a, b)
    ok = oracle.verify_product(a, b, claimed, quantum)
    rendered = format_class(claimed, spec, quantum=quantum)
    print(f"{'PASS' if ok else 'FAIL'}: {args.a} * {args.b} = {rendered}")
    return 0 if ok else 3


def _mirror(spec: QuiverSpec, args) -> int:
    if args.critical:
        relations = mirror_mod.critical_relations(spec)
        arrows = mirror_mod.abelian_arrows(spec)
        basis = mirror_mod.basis_arrows(spec)
        for rel in sorted(relations, key=lambda r: r.vertex):
            lhs = _monomial_str(arrows, rel.denom, lead=rel.arrow)
            rhs_parts = [str(rel.sign)] if rel.sign != 1 else []
            rhs_parts += [f"q[{i}]^{e}" for i, e in enumerate(rel.q, start=1) if e]
            rhs = _monomial_str(arrows, rel.numer)
            if rhs != "1":
                rhs_parts.append(rhs)
            print(f"{lhs} = {' * '.join(rhs_parts) if rhs_parts else '1'}")
        for i in range(1, spec.rho + 1):
            for j in range(1, spec.rank(i) + 1):
                for k in range(j + 1, spec.rank(i) + 1):
                    a, b = arrows[basis[(i, j)]], arrows[basis[(i, k)]]
                    print(f"subject to: x[{a.label()}] != x[{b.label()}]")
        return 0
    if args.raw:
        pot = mirror_mod.superpotential(spec)
        for term in pot.terms:
            print(term.render())
        for c in pot.constraints:
            print(f"subject to: {c.render()} = 1")
        return 0
    for term in mirror_mod.solved_potential(spec):
        print(term.render())
    return 0


def _monomial_str(arrows, exps, lead=None) -> str:
    parts = []
    if lead is not None:
        parts.append(f"x[{arrows[lead].label()}]^1")
        exps = list(exps)
    for idx, e in enumerate(exps):
        if e:
            parts.append(f"x[{arrows[idx].label()}]^{e}")
    return " * ".join(parts) if parts else "1"


if __name__ == "__main__":
    sys.exit(main())
