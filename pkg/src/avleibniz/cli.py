"""Command-line interface.

Exit codes: 0 success / checks passed, 1 checked and failed (witnesses
printed), 2 invalid input, 3 cochain complex invalid (d∘d != 0).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import fixtures as fx
from .algebra import (
    Convention,
    InducedMode,
    InvalidInput,
    ValidationReport,
    format_vector,
    induced_algebra,
    search_averaging_diagonal,
    validate_averaging,
    validate_leibniz,
)
from .audit import audit
from .cochain import matrix_of
from .cohomology import ComplexInvalid, ComplexKind, ComplexSpec, cohomology_report
from .deformation import (
    Rigidity,
    check_cocycle,
    check_deformation_order,
    check_equivalence,
    find_trivializer,
    rigidity_report,
)
from .ratmat import as_rational, format_rational
from .representation import (
    induced_representation,
    self_representation,
    validate_averaging_representation,
    validate_representation,
)

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_COMPLEX = 0, 1, 2, 3


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _report_payload(name: str, rep: ValidationReport, **extra) -> dict:
    return {
        "check": name,
        "passed": rep.passed,
        "failures": rep.failures,
        "witnesses": [w.to_json() for w in rep.witnesses],
        **extra,
    }


def _report_text(name: str, rep: ValidationReport) -> str:
    if rep.passed:
        return f"PASS {name}"
    return f"FAIL {name}: {rep.failures} failing tuple(s); first {rep.first.describe()}"


def _finish_reports(args, named: list[tuple[str, ValidationReport]], **extra) -> int:
    payload = {"reports": [_report_payload(n, r) for n, r in named], **extra}
    text = "\n".join(_report_text(n, r) for n, r in named)
    if extra:
        text += "\n" + "\n".join(f"{k}: {v}" for k, v in extra.items())
    _emit(args, payload, text)
    return EXIT_OK if all(r.passed for _, r in named) else EXIT_FAILED


def _mode(args) -> InducedMode:
    return InducedMode(args.mode)


def _load_base(args, need_operator: bool = True):
    A = fx.load_algebra(args.algebra)
    T = None
    if need_operator or getattr(args, "operator", None):
        if not getattr(args, "operator", None):
            raise InvalidInput("an operator file is required")
        T = fx.load_operator(args.operator, A.dim)
    return A, T


def _load_rep(args, A, T):
    if getattr(args, "rep", None):
        return fx.load_representation(args.rep, A)
    return self_representation(A, T)


# --- commands ---

def cmd_validate(args) -> int:
    A = fx.load_algebra(args.algebra)
    conv = Convention(args.convention)
    return _finish_reports(args, [(f"leibniz ({conv.value})", validate_leibniz(A, conv))])


def cmd_validate_operator(args) -> int:
    A, T = _load_base(args)
    return _finish_reports(args, [("averaging", validate_averaging(A, T))])


def cmd_validate_rep(args) -> int:
    A = fx.load_algebra(args.algebra)
    R = fx.load_representation(args.rep, A)
    named = [("representation", validate_representation(R))]
    if args.operator:
        T = fx.load_operator(args.operator, A.dim)
        named.append(("averaging-representation", validate_averaging_representation(R, T)))
    return _finish_reports(args, named)


def cmd_induce(args) -> int:
    A, T = _load_base(args)
    pre = validate_averaging(A, T)
    if not pre.passed:
        return _finish_reports(args, [("averaging (precondition)", pre)])
    mode = _mode(args)
    doc = {"algebra": fx.algebra_to_json(induced_algebra(A, T, mode))}
    if args.rep:
        doc["representation"] = fx.representation_to_json(induced_representation(fx.load_representation(args.rep, A), T, mode))
    sys.stdout.write(json.dumps(doc if args.rep else doc["algebra"], indent=2) + "\n")
    return EXIT_OK


def cmd_matrix(args) -> int:
    A, T = _load_base(args, need_operator=args.op != "delta")
    R = _load_rep(args, A, T)
    M = matrix_of(args.op, args.deg, R, T, _mode(args))
    rows = [[format_rational(x) for x in row] for row in M.to_rows()]
    sys.stdout.write(json.dumps({"operator": args.op, "degree": args.deg, "shape": [M.rows, M.cols], "matrix": rows}) + "\n")
    return EXIT_OK


def cmd_cohomology(args) -> int:
    kind = ComplexKind(args.complex)
    A, T = _load_base(args, need_operator=kind is not ComplexKind.LA)
    R = _load_rep(args, A, T)
    if args.deg > 3:
        raise InvalidInput("--deg must be at most 3 (the complex is built through degree 4)")
    spec = ComplexSpec(kind, R, T, _mode(args), max_degree=args.deg + 1)
    rep = cohomology_report(spec, args.deg)
    lines = [f"complex {kind.value} ({spec.mode.value} mode)"]
    for r in rep.rows:
        h = "undefined (d o d != 0)" if r.betti is None else str(r.betti)
        lines.append(f"dim C^{r.degree} = {r.cochain_dim}, rank d^{r.degree} = {r.rank}, dim H^{r.degree} = {h}")
    for c in rep.invalid:
        lines.append(f"invalid: d^{c.degree + 1} o d^{c.degree} != 0 (defect rank {c.defect_rank})")
    _emit(args, rep.to_json(), "\n".join(lines))
    return EXIT_OK if rep.valid else EXIT_COMPLEX


def cmd_check_cocycle(args) -> int:
    A, T = _load_base(args)
    D = fx.load_deformation(args.deformation, A, T)
    if D.order < 1:
        raise InvalidInput("deformation has no first-order term")
    rep = check_cocycle(A, T, D.mu[1], D.theta[1], _mode(args))
    return _finish_reports(args, [("cocycle", rep)], delta_component=rep.flags["delta"],
                           operator_component=rep.flags["operator"])


def cmd_check_deformation(args) -> int:
    A, T = _load_base(args)
    D = fx.load_deformation(args.deformation, A, T)
    if args.order is not None:
        D = D.truncate(args.order)
    return _finish_reports(args, [(f"deformation order {D.order}", check_deformation_order(D))])


def cmd_check_equivalence(args) -> int:
    A, T = _load_base(args)
    D = fx.load_deformation(args.deformation, A, T)
    D2 = fx.load_deformation(args.other, A, T)
    P = fx.load_isomorphism(args.isomorphism, A.dim)
    return _finish_reports(args, [("equivalence", check_equivalence(D, D2, P))])


def cmd_find_trivializer(args) -> int:
    A, T = _load_base(args)
    D = fx.load_deformation(args.deformation, A, T)
    if D.order < 1:
        raise InvalidInput("deformation has no first-order term")
    found = find_trivializer(A, T, D.mu[1], D.theta[1], _mode(args))
    if found is None:
        _emit(args, {"coboundary": False}, "not a coboundary")
        return EXIT_FAILED
    psi1, u = found
    payload = {"coboundary": True, "psi1": fx.matrix_to_json(psi1), "u": [format_rational(x) for x in u]}
    text = f"psi1 = {fx.matrix_to_json(psi1)}\nu = {format_vector(u)}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_rigidity(args) -> int:
    A, T = _load_base(args)
    v = rigidity_report(A, T, _mode(args))
    payload = {"verdict": v.kind.value, "dim_H2": v.dim_h2,
               "defect": None if v.defect is None else {"degree": v.defect.degree, "defect_rank": v.defect.defect_rank}}
    _emit(args, payload, v.describe())
    return {Rigidity.RIGID: EXIT_OK, Rigidity.INCONCLUSIVE: EXIT_FAILED, Rigidity.COMPLEX_INVALID: EXIT_COMPLEX}[v.kind]


def cmd_search(args) -> int:
    A = fx.load_algebra(args.algebra)
    try:
        values = [as_rational(v) for v in args.values.split(",") if v.strip()]
    except (TypeError, ValueError, ZeroDivisionError):
        raise InvalidInput(f"--values: {args.values!r} is not a comma-separated list of rationals") from None
    found = search_averaging_diagonal(A, values)
    diags = [[format_rational(T.matrix[i, i]) for i in range(A.dim)] for T in found]
    _emit(args, {"diagonals": diags}, "\n".join("diag(" + ", ".join(d) + ")" for d in diags) or "none")
    return EXIT_OK


def cmd_audit(args) -> int:
    A, T = _load_base(args)
    R = fx.load_representation(args.rep, A) if args.rep else None
    D = fx.load_deformation(args.deformation, A, T) if args.deformation else None
    report = audit(A, T, R, D)
    _emit(args, report.to_json(), report.text())
    return EXIT_FAILED if report.any_failed else EXIT_OK


def cmd_fixtures(args) -> int:
    items = fx.list_fixtures()
    _emit(args, {"fixtures": [{"name": f.name, "kind": f.kind} for f in items]},
          "\n".join(f"{f.name:20} {f.kind}" for f in items))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--mode", choices=[m.value for m in InducedMode], default="strict",
                        help="how the operator enters induced brackets and actions (default strict)")
    common.add_argument("--convention", choices=[c.value for c in Convention], default="left")

    parser = argparse.ArgumentParser(prog="avleibniz", description="Exact workbench for averaging Leibniz algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, *positional, optional_operator=False):
        p = sub.add_parser(name, parents=[common], help=help_)
        for pos in positional:
            p.add_argument(pos)
        if optional_operator:
            p.add_argument("operator", nargs="?")
        p.set_defaults(func=fn)
        return p

    add("validate", cmd_validate, "check the Leibniz identity", "algebra")
    add("validate-operator", cmd_validate_operator, "check the averaging identities", "algebra", "operator")
    p = add("validate-rep", cmd_validate_rep, "check a representation", "algebra", "rep")
    p.add_argument("--operator", help="also check compatibility with this operator")
    p = add("induce", cmd_induce, "print the induced algebra", "algebra", "operator")
    p.add_argument("--rep")
    p = add("matrix", cmd_matrix, "dump a differential as a matrix", "algebra", optional_operator=True)
    p.add_argument("--op", choices=["delta", "partial", "phi", "cone"], default="delta")
    p.add_argument("--deg", type=int, default=1)
    p.add_argument("--rep")
    p = add("cohomology", cmd_cohomology, "cohomology dimensions", "algebra", optional_operator=True)
    p.add_argument("--complex", choices=[k.value for k in ComplexKind], default="la")
    p.add_argument("--deg", type=int, default=2, help="report degrees 0..DEG")
    p.add_argument("--rep")
    add("check-cocycle", cmd_check_cocycle, "is the first-order term a cone 2-cocycle", "algebra", "operator", "deformation")
    p = add("check-deformation", cmd_check_deformation, "check a truncated deformation", "algebra", "operator", "deformation")
    p.add_argument("--order", type=int)
    add("check-equivalence", cmd_check_equivalence, "check a formal isomorphism",
        "algebra", "operator", "deformation", "other", "isomorphism")
    add("find-trivializer", cmd_find_trivializer, "solve d1(psi1, u) = (mu1, theta1)", "algebra", "operator", "deformation")
    add("rigidity", cmd_rigidity, "rigidity verdict from H^2 of the cone", "algebra", "operator")
    p = add("search-averaging-diagonal", cmd_search, "enumerate diagonal averaging operators", "algebra")
    p.add_argument("--values", default="0,1", help="comma-separated candidate entries, e.g. 0,1/2,1")
    p = add("audit", cmd_audit, "re-examine every claim on the inputs", "algebra", "operator")
    p.add_argument("--rep")
    p.add_argument("--deformation")
    add("fixtures", cmd_fixtures, "list bundled fixtures")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ComplexInvalid as exc:
        sys.stderr.write(f"complex invalid: {exc}\n")
        return EXIT_COMPLEX
    except (InvalidInput, ValueError) as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
