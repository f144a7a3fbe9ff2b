"""Command line front end.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import explore, relations
from .families import InvalidSpec, build, check_mask_closure, dims_formula, parse_spec, signature_of
from .gmatrix import Matrix, span_equal
from .graded import (
    D01,
    D10,
    DEGREES,
    GradingConflict,
    check_closure,
    check_jacobi,
    generate_with_levels,
    structure_constants,
)
from .report import Report

CHECKS = ("jacobi", "closure", "generation", "dims")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _spec(text: str):
    try:
        return parse_spec(text)
    except InvalidSpec as exc:
        raise UsageError(str(exc)) from None


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=False))


def _print_report(report: Report, verbose: bool = False) -> None:
    print(report.summary())
    for note in report.notes:
        print(f"  note: {note}")
    for rec in report.records:
        if rec.status == "pass" and not verbose:
            continue
        idx = ", ".join(f"{k}={v}" for k, v in rec.index.items())
        print(f"  {rec.status.upper()} {rec.identity} [{idx}]")
        if rec.residual:
            for line in rec.residual.splitlines():
                print(f"      {line}")


# ----------------------------------------------------------------------
# commands


def cmd_build(args) -> int:
    spec = _spec(args.spec)
    basis, _ = build(spec)
    if args.json:
        _emit({
            "spec": str(spec),
            "signature": list(basis.signature()),
            "basis": [
                {"label": lab, "degree": d.to_json(), "matrix": m.to_text()}
                for lab, d, m in zip(basis.labels, basis.degrees, basis.matrices)
            ],
        })
        return EXIT_OK
    print(f"# {spec}  dim {len(basis)}  signature {basis.signature()}")
    for lab, d, m in zip(basis.labels, basis.degrees, basis.matrices):
        print(f"\n{lab} {d}")
        print(m.to_text())
    return EXIT_OK


def cmd_dims(args) -> int:
    spec = _spec(args.spec)
    formula = dims_formula(spec)
    basis, _ = build(spec)
    built = basis.signature()
    expected = signature_of(formula)
    if args.json:
        _emit({"spec": str(spec), "formula": list(expected), "built": list(built), "total": sum(built)})
    else:
        print(f"{spec}")
        for d, f, b in zip(DEGREES, expected, built):
            print(f"  {d}  formula {f:4d}  built {b:4d}")
        print(f"  total {sum(built)}")
    return EXIT_OK if built == expected else EXIT_FAIL


def _generation_report(basis) -> Report:
    report = Report("generation")
    g10, g01 = basis.component(D10), basis.component(D01)
    if not g10 or not g01:
        report.notes.append("skipped: a generating component is empty")
        return report
    try:
        closed, levels = generate_with_levels(g10, g01)
    except GradingConflict as exc:
        report.add("generate", {}, False, str(exc))
        return report
    for d in DEGREES:
        ok = span_equal(closed.span(d), basis.span(d))
        report.add("span", {"degree": str(d)}, ok, keep_pass=False)
    report.add("levels", {"levels": levels}, levels <= 1, None if levels <= 1 else f"{levels} bracket levels",
               keep_pass=False)
    return report


def _parse_checks(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise UsageError("empty --checks list")
    out = []
    for name in names:
        if name == "all":
            out.extend(CHECKS)
        elif name in CHECKS:
            out.append(name)
        else:
            raise UsageError(f"unknown check {name!r}; choose from {', '.join(CHECKS + ('all',))}")
    return list(dict.fromkeys(out))


def cmd_verify(args) -> int:
    checks = _parse_checks(args.checks)
    spec = _spec(args.spec)
    basis, mask = build(spec)
    reports = []
    for name in checks:
        if name == "jacobi":
            reports.append(check_jacobi(basis, jobs=args.jobs))
        elif name == "closure":
            reports.append(check_closure(basis))
            reports.append(check_mask_closure(basis, mask))
        elif name == "generation":
            reports.append(_generation_report(basis))
        elif name == "dims":
            r = Report("dims")
            want = signature_of(dims_formula(spec))
            got = basis.signature()
            r.add("dims", {"formula": list(want), "built": list(got)}, want == got)
            reports.append(r)
    ok = all(r.passed for r in reports)
    if args.json:
        _emit({"spec": str(spec), "passed": ok, "reports": [r.to_json() for r in reports]})
    else:
        print(f"{spec}: {'PASS' if ok else 'FAIL'}")
        for r in reports:
            _print_report(r)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_structure_constants(args) -> int:
    spec = _spec(args.spec)
    basis, _ = build(spec)
    sc = structure_constants(basis)
    if args.format == "json":
        _emit(sc.to_json())
        return EXIT_OK
    for (i, j), terms in sorted(sc.entries.items()):
        rhs = " + ".join(f"({c})*{sc.basis_labels[k]}" for k, c in terms)
        print(f"[[{sc.basis_labels[i]}, {sc.basis_labels[j]}]] = {rhs}")
    return EXIT_OK


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {text!r}") from None


def cmd_examples(args) -> int:
    name, params = args.suite, args.params
    arity = {"gell-mann": 0, "parafermion": 2, "a-stat": 2}
    if name not in arity:
        raise UsageError(f"unknown example suite {name!r}; choose from {', '.join(arity)}")
    if len(params) != arity[name]:
        raise UsageError(f"{name} takes {arity[name]} parameters, got {len(params)}")
    try:
        if name == "gell-mann":
            report = relations.check_gell_mann_table()
        elif name == "parafermion":
            report = relations.check_parafermion(_int(params[0], "n"), _int(params[1], "p"))
        else:
            report = relations.check_a_statistics(_int(params[0], "n"), _int(params[1], "q"))
    except InvalidSpec as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        _emit(report.to_json())
    else:
        _print_report(report, verbose=args.verbose)
        for ident, (n, bad) in report.tally.items():
            print(f"  {ident}: {n - bad}/{n} pass")
    return EXIT_OK if report.passed else EXIT_FAIL


def read_generators(path: str) -> list[Matrix]:
    """Matrices in text form, one block per generator, blocks separated by blank lines."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    blocks, cur = [], []
    for line in text.splitlines():
        if line.strip().startswith("#"):
            continue
        if line.strip():
            cur.append(line)
        elif cur:
            blocks.append("\n".join(cur))
            cur = []
    if cur:
        blocks.append("\n".join(cur))
    try:
        return [Matrix.from_text(b) for b in blocks]
    except (ValueError, IndexError) as exc:
        raise UsageError(f"malformed matrix in {path}: {exc}") from None


def cmd_search(args) -> int:
    ambient = _spec(args.ambient)
    gens = read_generators(args.generators)
    try:
        results = explore.run_partition_search(ambient, gens, jobs=args.jobs)
    except explore.InvalidGenerators as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        _emit(explore.search_report(ambient, results))
    else:
        print(f"{ambient}: {len(results)} colorings, {sum(r.valid for r in results)} valid")
        for r in results:
            if r.valid:
                fam = r.matched_family or "-"
                tag = "span match" if r.exact_match else "dims only"
                print(f"  {r.coloring}  signature {r.signature}  {fam} ({tag})"
                      f"  in-ambient={'yes' if r.contained_in_ambient else 'no'}")
            else:
                print(f"  {r.coloring}  invalid: {r.error}")
    return EXIT_OK if any(r.valid for r in results) else EXIT_FAIL


def cmd_iso(args) -> int:
    a_spec, b_spec = _spec(args.spec_a), _spec(args.spec_b)
    if args.budget < 1:
        raise UsageError("--budget must be positive")
    a, _ = build(a_spec)
    b, _ = build(b_spec)
    try:
        out = explore.find_graded_isomorphism(a, b, budget=args.budget)
    except explore.NotIsomorphicSignature as exc:
        if args.json:
            _emit({"found": False, "reason": "NotIsomorphicSignature", "detail": str(exc)})
        else:
            print(f"NotIsomorphicSignature: {exc}")
        return EXIT_FAIL
    if args.json:
        _emit(out.to_json())
    elif isinstance(out, explore.GradedIsomorphism):
        print(f"witness found after {out.tested} candidates")
        for i, (t, s) in enumerate(zip(out.images, out.signs)):
            print(f"  {a.labels[i]} -> {'-' if s < 0 else '+'}{b.labels[t]}")
    else:
        state = "class exhausted" if out.exhausted else "budget exhausted"
        print(f"NotFoundWithinBudget: {out.tested} candidates tested ({state})")
    return EXIT_OK if isinstance(out, explore.GradedIsomorphism) else EXIT_FAIL


# ----------------------------------------------------------------------


def _jobs(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("--jobs must be >= 1")
    return n


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=_jobs, default=None,
                        help="worker processes (default: $GLA_JOBS or 1)")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="zzlie", description="Z2xZ2-graded matrix Lie algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="print a family basis")
    p.add_argument("spec")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("dims", parents=[common], help="per-degree dimensions, formula against built")
    p.add_argument("spec")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("verify", parents=[common], help="run identity checks on a family")
    p.add_argument("spec")
    p.add_argument("--checks", default="all", help="comma list of jacobi,closure,generation,dims or all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("structure-constants", parents=[common], help="export bracket coefficients")
    p.add_argument("spec")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_structure_constants)

    p = sub.add_parser("examples", parents=[common], help="gell-mann | parafermion N P | a-stat N Q")
    p.add_argument("suite")
    p.add_argument("params", nargs="*")
    p.add_argument("-v", "--verbose", action="store_true", help="list passing identities too")
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("search", parents=[common], help="partition-and-close search")
    p.add_argument("ambient", help="classical ambient spec, e.g. sl:2")
    p.add_argument("generators", help="file of generator matrices separated by blank lines")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("iso", parents=[common], help="signed-permutation graded isomorphism search")
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    p.add_argument("--budget", type=int, default=10**7)
    p.set_defaults(func=cmd_iso)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
