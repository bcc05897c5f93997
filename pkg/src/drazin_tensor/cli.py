"""Command-line front end: ``drazin-tensor <subcommand> [files] [flags]``.

Exit codes: 0 success, 1 verification or tolerance failure, 2 input error.
JSON output is deterministic: sorted keys, sets ordered by (re, im).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import harness
from .drazin import DrazinError, axiom_residuals, drazin_inverse, index_of
from .elementary import build, elementary_report_json, spectrum_check
from .linalg import (
    EigenSolverError,
    LinAlgInputError,
    Tolerance,
    as_matrix,
    complex_to_json,
    dumps,
    matrix_from_json,
    matrix_to_json,
)
from .spectral import (
    DescriptorError,
    SpectralClassification,
    classify_matrix,
    from_json,
    i_set,
    is_descriptor_json,
    points_to_json,
    to_json,
    validate,
    warnings,
)
from .tensor import TwoPathMismatch, report_to_json, tensor_classify

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

SUITE_TRIALS = {"drazin": 200, "matrix-tensor": 200, "elementary": 200, "symbolic": 10_000}


class InputError(Exception):
    pass


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _load_matrix(path: str, square: bool = True):
    try:
        return as_matrix(matrix_from_json(_load_json(path)), square=square)
    except LinAlgInputError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_descriptor(path: str) -> SpectralClassification:
    try:
        c = from_json(_load_json(path))
    except DescriptorError as exc:
        raise InputError(f"{path}: {exc}") from None
    problems = validate(c)
    if problems:
        detail = "; ".join(f"{v.invariant}: {v.detail}" for v in problems)
        raise InputError(f"{path} is not a valid descriptor: {detail}")
    return c


def _tol(args: argparse.Namespace) -> Tolerance:
    try:
        return Tolerance(args.tol_eig, args.tol_rank, args.tol_res)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(obj: dict, args: argparse.Namespace, text: str | None = None) -> None:
    if args.format == "text" and text is not None:
        print(text)
    else:
        print(dumps(obj))


def _fmt(z: complex) -> str:
    re, im = complex_to_json(z)
    return f"{re:g}" if im == 0 else f"{re:g}{im:+g}i"


def _fmt_set(points: list[list[float]]) -> str:
    return "{" + ", ".join(_fmt(complex(re, im)) for re, im in points) + "}"


# -- subcommands ------------------------------------------------------------------------


def cmd_drazin(args: argparse.Namespace) -> int:
    tol = _tol(args)
    a = _load_matrix(args.matrix)
    try:
        dec = drazin_inverse(a, tol)
    except DrazinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    res = axiom_residuals(a, dec.drazin_inverse, dec.index, tol)
    passed = all(v <= tol.residual_rel for v in res.values())
    out = {
        "index": dec.index,
        "drazin_inverse": matrix_to_json(dec.drazin_inverse),
        "residuals": res,
        "basis_cond": dec.basis_cond,
        "passed": passed,
    }
    text = (
        f"index {dec.index}\n"
        + "\n".join(f"residual {k} {v:.3e}" for k, v in sorted(res.items()))
        + f"\n{'PASS' if passed else 'FAIL'}"
    )
    _emit(out, args, text)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_classify(args: argparse.Namespace) -> int:
    obj = _load_json(args.file)
    if is_descriptor_json(obj):
        try:
            c = from_json(obj)
        except DescriptorError as exc:
            raise InputError(f"{args.file}: {exc}") from None
        problems = validate(c)
        out = {
            "kind": "descriptor",
            "valid": not problems,
            "violations": [{"invariant": v.invariant, "detail": v.detail} for v in problems],
            "warnings": [{"invariant": v.invariant, "detail": v.detail} for v in warnings(c)],
            "sets": {
                "spectrum": points_to_json(c.spectrum()),
                "acc": points_to_json(c.acc_set()),
                "Pi": points_to_json(c.pi_set()),
                "I": points_to_json(i_set(c)),
                "sigma_DR": points_to_json(c.sigma_dr()),
            },
        }
        text = "valid" if not problems else "invalid: " + ", ".join(v.invariant for v in problems)
        _emit(out, args, text)
        return EXIT_OK if not problems else EXIT_INPUT
    try:
        a = as_matrix(matrix_from_json(obj), square=True)
    except LinAlgInputError as exc:
        raise InputError(f"{args.file}: {exc}") from None
    try:
        c = classify_matrix(a, _tol(args))
    except EigenSolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out = {"kind": "matrix", "classification": to_json(c)}
    text = "\n".join(f"{_fmt(p.value)} {p.tag.value} order {p.order}" for p in c.points)
    _emit(out, args, text)
    return EXIT_OK


def _tensor_text(rep: dict, la: str, lb: str) -> str:
    d = rep["drazin_spectrum"]
    lines = [
        f"sigma({la}(x){lb}) points: "
        + ", ".join(f"{_fmt(complex(*p['value']))}:{p['tag']}" for p in rep["result"]["points"]),
        f"zero: {rep['zero']['status']} ({rep['zero']['case']})",
        f"sigma_DR: {_fmt_set(d['via_classification'])}  D: {_fmt_set(rep['sets']['D'])}",
        f"regime: {d['regime']}  equality_holds: {str(rep['equality_holds']).lower()}",
    ]
    lines += [f"warning: {w}" for w in rep["warnings"]]
    return "\n".join(lines)


def cmd_tensor(args: argparse.Namespace) -> int:
    a, b = _load_descriptor(args.a), _load_descriptor(args.b)
    try:
        report = tensor_classify(a, b)
    except TwoPathMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out = report_to_json(report)
    _emit(out, args, _tensor_text(out, "a", "b"))
    return EXIT_OK


def cmd_elementary(args: argparse.Namespace) -> int:
    tol = _tol(args)
    s, t = _load_matrix(args.S), _load_matrix(args.T)
    try:
        e = build(s, t, tol, seed=args.seed)
        check = spectrum_check(e, tol)
        report = tensor_classify(classify_matrix(s, tol), classify_matrix(t, tol))
    except (EigenSolverError, TwoPathMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out = {
        "sigma_M": points_to_json(set(check.operator_eigenvalues.tolist())),
        "sigma_M_multiset": points_to_json(check.operator_eigenvalues),
        "sigma_S_sigma_T_multiset": points_to_json(check.product_eigenvalues),
        "match": bool(check.matches),
        "max_deviation": check.max_deviation,
        "tolerance": check.tolerance,
        "index": index_of(e.matrix_form, tol),
        "probe_residual": e.probe_residual,
        "report": elementary_report_json(report),
    }
    text = (
        f"sigma(M) {_fmt_set(out['sigma_M'])}\n"
        f"match {str(out['match']).lower()} (max deviation {check.max_deviation:.3e})\n"
        f"index {out['index']}"
    )
    _emit(out, args, text)
    return EXIT_OK if check.matches else EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> int:
    if args.trials is not None and args.trials < 1:
        raise InputError("--trials must be positive")
    suites = list(SUITE_TRIALS) if args.suite == "all" else [args.suite]
    tol = _tol(args)
    summary: dict[str, Any] = {"seed": args.seed, "suites": {}}
    all_reports: list[harness.VerificationReport] = []
    for name in suites:
        trials = args.trials if args.trials is not None else SUITE_TRIALS[name]
        config = harness.DEFAULT_CONFIGS[name]
        config = harness.SuiteConfig(config.dims, config.cond_cap, tol, config.max_order)
        reports = harness.run_suite(name, trials, args.seed, config, workers=args.workers)
        all_reports += reports
        summary["suites"][name] = harness.summarize(reports)
    failed = [r for r in all_reports if not r.passed]
    summary["passed"] = len(all_reports) - len(failed)
    summary["failed"] = len(failed)
    if args.report:
        with open(args.report, "w") as fh:
            for r in all_reports:
                fh.write(json.dumps(r.to_json(), sort_keys=True) + "\n")
    if args.format == "text":
        for name, s in summary["suites"].items():
            print(f"{name}: {s['passed']}/{s['trials']} passed")
        for r in failed:
            print(f"FAIL {r.kind} trial {r.trial_id} seed {r.seed}: {'; '.join(r.failures)}")
    else:
        for r in failed:
            print(json.dumps(r.to_json(), sort_keys=True))
        print(json.dumps(summary, sort_keys=True))
    return EXIT_FAIL if failed else EXIT_OK


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-eig", type=float, default=None, help="absolute eigenvalue clustering radius")
    common.add_argument("--tol-rank", type=float, default=None, help="relative singular value cutoff")
    common.add_argument("--tol-res", type=float, default=1e-8, help="relative residual tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="drazin-tensor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("drazin", parents=[common], help="Drazin inverse, index and axiom residuals")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_drazin)

    p = sub.add_parser("classify", parents=[common], help="classify a matrix or validate a descriptor")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("tensor", parents=[common], help="classify the tensor product of two descriptors")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("elementary", parents=[common], help="spectrum of A -> S A T")
    p.add_argument("S")
    p.add_argument("T")
    p.set_defaults(func=cmd_elementary)

    p = sub.add_parser("verify", parents=[common], help="run randomized verification suites")
    p.add_argument("--suite", choices=(*SUITE_TRIALS, "all"), default="all")
    p.add_argument("--trials", type=int, default=None, help="trials per suite (default: suite-specific)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--report", default=None, help="write every trial report to this JSON-lines file")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
