"""Command-line front end.

Every invocation prints one report, as text or (with ``--json``) as a single
JSON object with the frozen keys ``command``, ``status``, ``payload`` and,
unless ``--no-timing`` is given, ``timing``.

Exit codes: 0 ok, 1 violations found, 2 bad input or inapplicable theorem,
3 an internal limit was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import catalogs, subspaces, typecalc, unitary
from .algebra import COMPLEX, REAL, Signature, clifford_conjugate
from .errors import ConvergenceError, InputError, LimitError, ParseError
from .textfmt import format_multivector, parse_binary, parse_multivector

EXIT_OK, EXIT_VIOLATIONS, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3

FIELD_NAMES = {"r": REAL, "real": REAL, "c": COMPLEX, "complex": COMPLEX}
OP_NAMES = {"comm": "commutator", "anti": "anticommutator", "prod": "product"}
VERIFY_TARGETS = tuple(f"T{i}" for i in range(1, 14)) + ("tables", "groups")


@dataclass
class Outcome:
    payload: dict
    text: list[str]
    violations: bool = False
    status_detail: dict = field(default_factory=dict)


# -- argument helpers ---------------------------------------------------------


def parse_sig(text: str) -> Signature:
    try:
        p, q = (int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"signature must look like 'p,q', got {text!r}") from None
    return Signature(p, q)


def parse_field(text: str) -> str:
    try:
        return FIELD_NAMES[text]
    except KeyError:
        raise ParseError(f"field must be r or c, got {text!r}") from None


def parse_op(text: str) -> str:
    return OP_NAMES.get(text) or subspaces.canonical_op(text)


def signatures(n: int, all_signatures: bool, sig: str | None = None) -> list[Signature]:
    if sig is not None:
        s = parse_sig(sig)
        if s.n != n:
            raise InputError(f"signature {s} does not have p + q = {n}")
        return [s]
    return Signature.all_for(n) if all_signatures else [Signature(n, 0)]


def _need_n(args) -> int:
    if args.n is None:
        raise InputError(f"--n is required for --theorem {args.theorem}")
    return args.n


# -- subcommands --------------------------------------------------------------


def cmd_eval(args) -> Outcome:
    sig = parse_sig(args.sig)
    value = parse_binary(args.expr, sig, parse_field(args.field))
    text = format_multivector(value)
    return Outcome({"signature": str(sig), "field": value.field, "result": text}, [text])


def cmd_conj(args) -> Outcome:
    sig = parse_sig(args.sig)
    value = clifford_conjugate(parse_multivector(args.expr, sig, parse_field(args.field)))
    text = format_multivector(value)
    return Outcome({"signature": str(sig), "field": value.field, "result": text}, [text])


def cmd_type_table(args) -> Outcome:
    op = parse_op(args.op)
    table = typecalc.type_table(op)
    rows = {
        typecalc.format_type(t1): {typecalc.format_type(t2): typecalc.format_type(table[(t1, t2)]) for t2 in typecalc.ALL_TYPES}
        for t1 in typecalc.ALL_TYPES
    }
    return Outcome({"op": op, "table": rows}, typecalc.format_table(op, include_empty=True).splitlines())


def cmd_rank_range(args) -> Outcome:
    grades = subspaces.rank_product_range(args.k, args.l, args.n)
    payload = {"k": args.k, "l": args.l, "n": args.n, "grades": list(grades)}
    if args.op:
        op = parse_op(args.op)
        payload["op"] = op
        payload["grades"] = list(subspaces.grade_interaction(args.k, args.l, args.n, op))
    return Outcome(payload, [" ".join(str(g) for g in payload["grades"])])


def cmd_closure(args) -> Outcome:
    op = parse_op(args.op)
    fld = parse_field(args.field)
    spec = subspaces.GradedSubspaceSpec.parse(args.spec)
    if "n=" not in args.spec or spec.n != args.n:
        spec = subspaces.GradedSubspaceSpec.parse(f"n={args.n} " + _strip_keys(args.spec))
    if spec.field != fld:
        spec = spec.with_field(fld)
    sig = parse_sig(args.sig) if args.sig else None
    if sig is not None and sig.n != spec.n:
        raise InputError(f"signature {sig} does not have p + q = {spec.n}")
    report = subspaces.closure_check(spec, op, sig)
    text = [f"{spec.label()}: {'closed' if report.closed else 'not closed'} under {op}"]
    text += [f"  {_describe_violation(v)}" for v in report.violations]
    return Outcome(report.to_dict(), text, violations=not report.closed)


def _strip_keys(line: str) -> str:
    return " ".join(part for part in line.split() if not part.startswith("n="))


def _describe_violation(v: subspaces.ClosureViolation) -> str:
    return (
        f"ranks {v.k} x {v.l} -> {v.m}: needs {v.required.code}, has {v.available.code}"
        f" (witness blades {v.witness[0]:#b}, {v.witness[1]:#b})"
    )


def cmd_enumerate(args) -> Outcome:
    op = parse_op(args.op)
    fld = parse_field(args.field)
    found = subspaces.enumerate_closed(args.n, op, fld, pattern=args.pattern)
    payload = {
        "n": args.n,
        "op": op,
        "field": fld,
        "pattern": args.pattern,
        "count": len(found),
        "specs": [s.to_line() for s in found],
    }
    text = [s.label() for s in found] + [f"count {len(found)}"]
    return Outcome(payload, text)


# -- verify -------------------------------------------------------------------


def verify_catalog(args) -> Outcome:
    n = _need_n(args)
    fields = [parse_field(args.field)] if args.field else list(catalogs.theorem_fields(args.theorem))
    sigs = signatures(n, args.all_signatures, args.sig)
    results = []
    text = []
    bad = False
    for fld in fields:
        thm = catalogs.theorem(args.theorem, fld)
        entries = catalogs.catalog_entries(thm.id, n, fld) + catalogs.augmentation_entries(thm.id, n, fld)
        checked = []
        for entry in entries:
            reports = {str(s): subspaces.closure_check(entry.spec, thm.op, s).to_dict() for s in sigs}
            closed = all(r["closed"] for r in reports.values())
            bad |= not closed
            checked.append({**entry.to_dict(), "label": entry.spec.label(), "closed": closed})
            mark = "ok  " if closed else "FAIL"
            text.append(f"{mark} {thm.id} {fld} {entry.label:<6} {entry.spec.label()}")
        result = {"field": fld, "op": thm.op, "entries": checked}
        if n <= subspaces.enumeration_cap(fld, thm.pattern):
            diff = catalogs.diff_catalog(thm.id, n, fld)
            result["diff"] = diff.to_dict()
            # Only the families stated as complete are expected to match.
            if thm.id in ("T9", "T10", "T11", "T12", "T13"):
                bad |= not diff.empty
            for spec in diff.missing_from_catalog:
                text.append(f"enumerated, not in catalog: {spec.label()}")
            for spec in diff.missing_from_enumeration:
                text.append(f"in catalog, not closed: {spec.label()}")
        results.append(result)
    return Outcome(
        {"theorem": args.theorem, "n": n, "signatures": [str(s) for s in sigs], "results": results},
        text,
        violations=bad,
    )


def verify_t4(args) -> Outcome:
    n = _need_n(args)
    reports = [unitary.verify_theorem4(s) for s in signatures(n, args.all_signatures, args.sig)]
    text = [
        f"{r.n} {s}: {r.pairs_checked} pairs, {len(r.violations)} violations"
        for r, s in zip(reports, signatures(n, args.all_signatures, args.sig))
    ]
    payload = {
        "theorem": "T4",
        "reports": {str(s): r.to_dict() for r, s in zip(reports, signatures(n, args.all_signatures, args.sig))},
    }
    return Outcome(payload, text, violations=not all(r.ok for r in reports))


def verify_type_tables(args) -> Outcome:
    n = _need_n(args)
    sigs = signatures(n, args.all_signatures, args.sig)
    payload = {"theorem": "tables", "reports": {}}
    text = []
    bad = False
    for s in sigs:
        report = typecalc.verify_type_tables(s)
        bad |= not report.ok
        payload["reports"][str(s)] = {
            "pairs_checked": report.pairs_checked,
            "violations": [v.to_dict() for v in report.violations],
        }
        text.append(f"{s}: {report.pairs_checked} checks, {len(report.violations)} violations")
    return Outcome(payload, text, violations=bad)


def verify_t5(args) -> Outcome:
    n = _need_n(args)
    sigs = signatures(n, args.all_signatures, args.sig)
    payload = {"theorem": args.theorem, "reports": {}}
    text = []
    bad = False
    for s in sigs:
        report = unitary.verify_theorem5_13(s, samples=args.samples, seed=args.seed)
        bad |= not report.ok
        payload["reports"][str(s)] = report.to_dict(with_residuals=not args.no_timing)
        for c in report.checks:
            mark = "ok  " if c.ok else "FAIL"
            text.append(f"{mark} {s} {c.source:<10} {c.spec.label():<28} group {c.ambient.label()}")
    return Outcome(payload, text, violations=bad)


def verify_t7(args) -> Outcome:
    n = _need_n(args)
    if n > subspaces.BLADE_LEVEL_MAX_DIM:
        raise LimitError(f"blade-level rank verification is limited to n <= {subspaces.BLADE_LEVEL_MAX_DIM}")
    bad = []
    for s in signatures(n, args.all_signatures, args.sig):
        table = subspaces.blade_interaction_table(s, "product")
        for (k, l), found in sorted(table.items()):
            expected = subspaces.rank_product_range(k, l, n)
            if tuple(sorted(found)) != expected:
                bad.append({"signature": str(s), "k": k, "l": l, "found": sorted(found), "expected": list(expected)})
    text = [f"{len(bad)} rank pairs disagree with the predicted range"]
    return Outcome({"theorem": "T7", "n": n, "mismatches": bad}, text, violations=bool(bad))


def verify_groups(args) -> Outcome:
    if args.n is not None and not 1 <= args.n <= 4:
        raise InputError("the Lie group tables cover n = 1..4")
    checks = unitary.verify_tables(args.n, samples=args.samples, seed=args.seed)
    text = []
    for c in checks:
        mark = "ok  " if c.ok else "FAIL"
        note = f" [{c.printed_status}]" if c.printed_status else ""
        det = " [det condition unchecked]" if c.det_condition else ""
        text.append(f"{mark} n={c.n} {c.signature} {c.algebra:<16} -> {c.ambient or 'one-parameter'}{note}{det}")
    payload = {"theorem": "groups", "checks": [c.to_dict(with_errors=not args.no_timing) for c in checks]}
    return Outcome(payload, text, violations=not all(c.ok for c in checks))


VERIFIERS: dict[str, Callable[[argparse.Namespace], Outcome]] = {
    **{tid: verify_catalog for tid in catalogs.THEOREM_IDS},
    "T4": verify_t4,
    "T5": verify_t5,
    "T6": verify_t5,
    "T7": verify_t7,
    "tables": verify_type_tables,
    "groups": verify_groups,
}


def cmd_verify(args) -> Outcome:
    target = args.theorem if args.theorem in ("tables", "groups") else args.theorem.upper()
    if target not in VERIFIERS:
        raise InputError(f"unknown verification target {args.theorem!r}; expected one of {', '.join(VERIFY_TARGETS)}")
    args.theorem = target
    return VERIFIERS[target](args)


# -- driver -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--no-timing", action="store_true", help="omit timing and float residuals")

    parser = argparse.ArgumentParser(prog="clifford-typify", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate EXPR [op EXPR]")
    p.add_argument("--sig", required=True, help="signature p,q")
    p.add_argument("--field", default="r", help="r or c")
    p.add_argument("expr")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("conj", parents=[common], help="Clifford conjugate of EXPR")
    p.add_argument("--sig", required=True)
    p.add_argument("--field", default="c")
    p.add_argument("expr")
    p.set_defaults(run=cmd_conj)

    p = sub.add_parser("type-table", parents=[common], help="print a 16x16 type table")
    p.add_argument("--op", required=True, help="comm, anti or prod")
    p.set_defaults(run=cmd_type_table)

    p = sub.add_parser("rank-range", parents=[common], help="ranks occurring in products of ranks K and L")
    p.add_argument("k", type=int)
    p.add_argument("l", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--op", help="restrict to comm or anti")
    p.set_defaults(run=cmd_rank_range)

    p = sub.add_parser("closure", parents=[common], help="closure check of one graded spec")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--op", required=True)
    p.add_argument("--field", default="r")
    p.add_argument("--spec", required=True, help='e.g. "0:r 2:r 4:r"')
    p.add_argument("--sig", help="check at blade level in this signature")
    p.set_defaults(run=cmd_closure)

    p = sub.add_parser("enumerate", parents=[common], help="all closed graded specs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--op", required=True)
    p.add_argument("--field", default="r")
    p.add_argument("--pattern", choices=("wc", "types"))
    p.set_defaults(run=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="verify a theorem, the type tables or the group tables")
    p.add_argument("--theorem", required=True, help=" | ".join(VERIFY_TARGETS))
    p.add_argument("--n", type=int)
    p.add_argument("--field", help="r or c; default: every field the theorem covers")
    p.add_argument("--sig", help="a single signature p,q")
    p.add_argument("--all-signatures", action="store_true")
    p.add_argument("--samples", type=int, default=20, help="random elements per exponential check")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_verify)
    return parser


def _echo(args: argparse.Namespace) -> dict:
    skip = {"run", "json", "no_timing"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    echo = _echo(args)
    start = time.perf_counter()
    code = EXIT_OK
    try:
        outcome = args.run(args)
        status = "violations" if outcome.violations else "ok"
        code = EXIT_VIOLATIONS if outcome.violations else EXIT_OK
        payload, text = outcome.payload, outcome.text
    except (LimitError, ConvergenceError) as exc:
        status, code = "error", EXIT_LIMIT
        payload, text = {"error": type(exc).__name__, "message": str(exc)}, [f"error: {exc}"]
    except InputError as exc:
        status, code = "error", EXIT_INPUT
        payload, text = {"error": type(exc).__name__, "message": str(exc)}, [f"error: {exc}"]
    elapsed = time.perf_counter() - start
    if args.json:
        doc = {"command": echo, "status": status, "payload": payload}
        if not args.no_timing:
            doc["timing"] = {"seconds": round(elapsed, 6)}
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        for line in text:
            out.write(line + "\n")
        if status != "ok" or args.command == "verify":
            out.write(f"status: {status}\n")
        if not args.no_timing and args.command in ("enumerate", "verify"):
            out.write(f"time: {elapsed:.3f}s\n")
    return code


def main() -> None:
    sys.exit(run())
