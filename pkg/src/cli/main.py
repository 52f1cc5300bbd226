"""
Command-line interface for qheine.

Usage:
    python -m src.cli relation A 1 Z
    python -m src.cli relation A B 1 --format json
    python -m src.cli verify-generators --truncation 24 --derive
    python -m src.cli membership operator.json
    python -m src.cli classify --emit-table
    python -m src.cli group --format latex
    python -m src.cli verify-symmetry --word t_h --samples 20 --g-ratios
    python -m src.cli eval --a 0.3 --b 0.2+0.1j --c 0.7 --z 0.4 --q 0.5

Exit codes: 0 success, 1 verification failure, 2 usage error. JSON and
rendered results go to stdout; logs go to stderr.
"""

import argparse
import json
import sys
from typing import Any, Callable, Dict, List, Optional

from pydantic import BaseModel

from src.models.codec import load_operator, parse_transformation
from src.models.schemas import CandidateRecord, ClassificationReport, OutputFormat
from src.orchestrator.workbench import Workbench
from src.templates.latex import render_candidate_table, render_group, render_operator, render_relation
from src.utils.errors import ParseError, PreconditionError, QHeineError, format_error_report
from src.utils.logger import format_error, format_success, format_warning, setup_logging


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _emit_json(payload: Any) -> None:
    if isinstance(payload, BaseModel):
        text = payload.model_dump_json(indent=2)
    else:
        text = json.dumps(payload, indent=2, default=str)
    sys.stdout.write(text + "\n")


def _verdict(ok: bool, message: str) -> None:
    print(format_success(message) if ok else format_error(message))


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------

def cmd_relation(bench: Workbench, args: argparse.Namespace) -> int:
    relation, report = bench.relation(args.shifts, args.truncation)

    if args.format == OutputFormat.JSON.value:
        _emit_json(report)
    elif args.format == OutputFormat.LATEX.value:
        sys.stdout.write(render_relation(relation))
    else:
        print(f"{report.text} = 0")
        _verdict(report.verified, f"annihilates 2phi1 to order z^{report.truncation}")
        if report.alternative_agrees is False:
            print(format_warning("second elimination order gives a different relation"))
        for pattern in report.divisibility:
            status = "holds" if pattern.all_hold else "FAILS"
            print(f"divisibility in {pattern.variable} (exponents {pattern.exponents}): {status}")
    return EXIT_OK if report.verified else EXIT_FAILED


def cmd_verify_generators(bench: Workbench, args: argparse.Namespace) -> int:
    report = bench.verify_generators(args.truncation, derive=args.derive)

    if args.format == OutputFormat.JSON.value:
        _emit_json(report)
    else:
        checks = list(report.checks)
        if report.abc_relation:
            checks.append(report.abc_relation)
        for check in checks + list(report.derivations):
            _verdict(check.passed, f"{check.name:<16} order z^{check.truncation}  ({check.elapsed_seconds:.2f}s)")
    return EXIT_OK if report.all_passed else EXIT_FAILED


def cmd_membership(bench: Workbench, args: argparse.Namespace) -> int:
    if args.operator == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.operator, "r", encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            raise ParseError(f"cannot read operator file: {e.strerror}", text=args.operator) from e

    D = load_operator(text)
    result, report = bench.membership(D, series_check=args.series_check or None)

    if args.format == OutputFormat.JSON.value:
        _emit_json(report)
    elif args.format == OutputFormat.LATEX.value:
        sys.stdout.write(render_operator(result.residual))
    else:
        print(f"operator of length {report.initial_length}, {report.reduction_steps} reduction steps")
        if report.member:
            print(format_success("in the annihilator ideal"))
        else:
            print(format_warning(f"not in the ideal; residual of length {report.residual_length}:"))
            print(f"  {result.residual.to_text()}")
        if report.series_check is not None:
            print(f"series check: {'annihilates' if report.series_check else 'does not annihilate'}")
    # A non-member is an answer, not a failure
    return EXIT_OK


def _canonical_records(report: ClassificationReport) -> List[CandidateRecord]:
    """Filter records of the canonical representatives, in enumeration order."""
    return [r for r in report.candidates if r.shift in report.canonical_representatives]


def cmd_classify(bench: Workbench, args: argparse.Namespace) -> int:
    report = bench.classify(args.workers)
    excluded = bench.excluded_matrix() if args.excluded else None

    if args.format == OutputFormat.JSON.value:
        payload: Dict[str, Any] = report.model_dump(mode="json")
        if excluded is not None:
            payload["excluded_matrix"] = excluded.model_dump(mode="json")
        _emit_json(payload)
    elif args.format == OutputFormat.LATEX.value or args.emit_table:
        sys.stdout.write(render_candidate_table(_canonical_records(report)))
    else:
        passed = sum(r.passed for r in report.candidates)
        print(f"{report.candidate_count} candidates ({len(report.canonical_representatives)} canonical), "
              f"{passed} pass the filter, {len(report.survivors)} canonical survivors")
        print(f"survivors (raw): {report.survivors_raw}")
        _verdict(report.survivors_match, f"survivors modulo inversion: {report.survivors}")
        if report.duplicated_table_rows:
            print(format_warning(f"duplicated table rows: {report.duplicated_table_rows}"))
        if report.uncovered_table_rows:
            print(format_warning(f"table rows outside the candidate set: {report.uncovered_table_rows}"))
        if report.missing_table_orbits:
            print(format_warning(f"candidate orbits missing from the table: {report.missing_table_orbits}"))
        if excluded is not None:
            _verdict(excluded.all_match, "excluded matrix forces the prefactor ratios of g")
    ok = report.survivors_match and (excluded is None or excluded.all_match)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_group(bench: Workbench, args: argparse.Namespace) -> int:
    report = bench.group()

    if args.format == OutputFormat.JSON.value:
        _emit_json(report)
    elif args.format == OutputFormat.LATEX.value:
        sys.stdout.write(render_group(parse_transformation(e.transformation) for e in report.elements))
    else:
        print(f"group of order {report.order}; generator orders {report.generator_orders}")
        for element in report.elements:
            t = parse_transformation(element.transformation)
            print(f"  {element.word or '1':<22} order {element.order}  prefactor {t.term.to_text()}")
        _verdict(report.structure_ok, "group structure and filter-identity invariance")
    return EXIT_OK if report.structure_ok else EXIT_FAILED


def cmd_verify_symmetry(bench: Workbench, args: argparse.Namespace) -> int:
    suite = bench.verify_symmetry(
        _eval_config(bench, args),
        words=args.word,
        g_ratios=args.g_ratios,
        identities=args.identities,
    )

    if args.format == OutputFormat.JSON.value:
        _emit_json(suite)
    else:
        for s in suite.symmetries:
            _verdict(s.passed, f"{s.word or '1':<22} max rel. error {s.max_rel_error:.3e} "
                               f"({s.samples} points, {s.resamples} redrawn)")
        if suite.ratios is not None:
            for c in suite.ratios.checks:
                ok = c.exact_match and c.max_rel_error < suite.ratios.tol
                _verdict(ok, f"g ratio {c.shift} = {c.expected}  max rel. error {c.max_rel_error:.3e}")
        if suite.excluded_matrix is not None:
            _verdict(suite.excluded_matrix.all_match, "excluded matrix forces the prefactor ratios of g")
        for c in suite.identities:
            _verdict(c.passed, f"{c.name:<22} max rel. error {c.max_rel_error:.3e}")
    return EXIT_OK if suite.passed else EXIT_FAILED


def cmd_eval(bench: Workbench, args: argparse.Namespace) -> int:
    coordinates = {name: getattr(args, name) for name in ("a", "b", "c", "z", "q")}
    report = bench.evaluate(coordinates, _eval_config(bench, args))

    if args.format == OutputFormat.JSON.value:
        _emit_json(report)
    else:
        print(report.value)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[Workbench, argparse.Namespace], int]] = {
    "relation": cmd_relation,
    "verify-generators": cmd_verify_generators,
    "membership": cmd_membership,
    "classify": cmd_classify,
    "group": cmd_group,
    "verify-symmetry": cmd_verify_symmetry,
    "eval": cmd_eval,
}


def _eval_config(bench: Workbench, args: argparse.Namespace):
    return bench.eval_config(samples=args.samples, precision=args.precision, tol=args.tol, seed=args.seed)


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=None,
                        help="output format (default from config)")
    common.add_argument("--samples", type=int, default=None, help="random points per numerical check")
    common.add_argument("--precision", type=int, default=None, help="working precision in bits")
    common.add_argument("--tol", type=float, default=None, help="relative error tolerance")
    common.add_argument("--seed", type=int, default=None, help="seed of the point sampler")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="qheine",
        description="Exact q-difference operators, contiguous relations and Heine symmetries of 2phi1.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("relation", parents=[common], help="three-term contiguous relation")
    p.add_argument("shifts", nargs=3, metavar="SHIFT",
                   help="shift expression such as 'A^2 C', 'Z^-1', '1' or '[1,0,1,0]'")
    p.add_argument("--truncation", type=int, default=None, help="series order of the check")

    p = sub.add_parser("verify-generators", parents=[common], help="check the seven ideal generators")
    p.add_argument("--truncation", type=int, default=None, help="series order of the check")
    p.add_argument("--derive", action="store_true", help="also rebuild five generators from P_a")

    p = sub.add_parser("membership", parents=[common], help="decide membership in the annihilator ideal")
    p.add_argument("operator", nargs="?", default="-", help="operator JSON file ('-' reads stdin)")
    p.add_argument("--series-check", action="store_true", help="cross-check against the series")

    p = sub.add_parser("classify", parents=[common], help="run the candidate classification")
    p.add_argument("--emit-table", action="store_true", help="print the LaTeX candidate table")
    p.add_argument("--workers", type=int, default=None, help="threads for the candidate filter")
    p.add_argument("--excluded", action="store_true", help="also analyse the excluded matrix")

    sub.add_parser("group", parents=[common], help="list the twelve Heine transformations")

    p = sub.add_parser("verify-symmetry", parents=[common], help="numerical symmetry checks")
    p.add_argument("--word", action="append", default=None,
                   help="group word to check, e.g. 't_h' (repeatable; default all)")
    p.add_argument("--g-ratios", action="store_true", help="also check the prefactor shift ratios")
    p.add_argument("--identities", action="store_true", help="also run the q-binomial and series oracles")

    p = sub.add_parser("eval", parents=[common], help="evaluate 2phi1 at one point")
    for name in ("a", "b", "c", "z", "q"):
        p.add_argument(f"--{name}", required=True, help=f"value of {name}")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    if args.log_level:
        setup_logging(log_level=args.log_level)

    bench = Workbench()
    if args.format is None:
        args.format = bench.config.output.get("default_format", OutputFormat.TEXT.value)

    try:
        return COMMANDS[args.command](bench, args)
    except (ParseError, PreconditionError) as e:
        print(format_error(e.message), file=sys.stderr)
        return EXIT_USAGE
    except QHeineError as e:
        if args.format == OutputFormat.JSON.value:
            print(json.dumps(e.to_dict()), file=sys.stderr)
        else:
            print(format_error_report(e), file=sys.stderr)
        return EXIT_FAILED
    except ValueError as e:
        # pydantic rejects out-of-range flag values (e.g. --precision 10)
        print(format_error(str(e)), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
