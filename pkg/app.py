"""
Command-line entry point.

    python app.py arrangement --input arr.json --table
    python app.py singularities --input arr.json
    python app.py flatness --input arr.json
    python app.py lattice --input gram.json
    python app.py cone --beta 1/3 --samples 100
    python app.py case-study res

Exit codes: 0 success, 2 input error, 3 internal invariant violation.
"""
import argparse
import sys

from analyses import analyze, analyze_cone, analyze_hermitian
from case_studies import CASE_STUDY_REGISTRY, run_case_study
from config import get_report_format
from events import log_event
from inputs import load_json_file, parse_input
from numeric import parse_rat
from report import lattice_from_dict, write_report

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3

SUBCOMMAND_ANALYSES = {
    "arrangement": ("lattice", "schedule", "flags"),
    "singularities": ("singularities",),
    "flatness": ("flatness",),
}


class InputError(Exception):
    pass


def _positive_int(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input JSON file")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--max-flag-len", type=_positive_int, default=None,
                        help="longest flag to enumerate (default: poset height)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--table", dest="format", action="store_const", const="table")

    parser = argparse.ArgumentParser(
        prog="arrangements",
        description="Exact birational calculus of hyperplane arrangements and ball-quotient lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("arrangement", parents=[common], help="intersection lattice, blow-up schedule, flags")
    sub.add_parser("singularities", parents=[common], help="exponents, cone angles, discrepancies")
    sub.add_parser("flatness", parents=[common], help="residue commutation and scalar-on-normal checks")
    p = sub.add_parser("lattice", parents=[common], help="Hermitian lattice signature and roots")
    p.add_argument("--root-bound", type=int, default=None)

    p = sub.add_parser("cone", parents=[common], help="standard cone metric check")
    p.add_argument("--beta", required=True, help="cone parameter, exact rational in (0,1]")
    p.add_argument("--samples", type=_positive_int, default=None, help="grid size (default 100)")

    p = sub.add_parser("case-study", parents=[common], help="verify a ball-quotient case study")
    p.add_argument("name", choices=sorted(CASE_STUDY_REGISTRY))
    p.add_argument("--root-bound", type=int, default=None)
    return parser


def _load(path):
    if not path:
        raise InputError("--input is required for this command")
    doc, errors = load_json_file(path)
    if errors:
        raise InputError("; ".join(errors))
    return doc


def run(args):
    if args.command in SUBCOMMAND_ANALYSES:
        spec = parse_input(_load(args.input))
        return analyze(spec, max_flag_len=args.max_flag_len, only=SUBCOMMAND_ANALYSES[args.command])

    if args.command == "lattice":
        return analyze_hermitian(lattice_from_dict(_load(args.input)), root_bound=args.root_bound)

    if args.command == "cone":
        return analyze_cone(parse_rat(args.beta), samples=args.samples)

    if args.command == "case-study":
        report = run_case_study(args.name, root_bound=args.root_bound)
        if args.input:
            # user-supplied local excerpt of the arrangement
            report["arrangement"] = analyze(parse_input(_load(args.input)), max_flag_len=args.max_flag_len)
        return report

    raise ValueError(f"unknown command: {args.command}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    fmt = args.format or get_report_format()
    try:
        report = run(args)
    except (InputError, ValueError) as e:
        log_event("INPUT_ERROR", command=args.command, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except RuntimeError as e:
        log_event("INVARIANT_VIOLATION", command=args.command, error=repr(e))
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL

    try:
        write_report(report, fmt, args.output)
    except OSError as e:
        print(f"error: cannot write {args.output}: {e}", file=sys.stderr)
        return EXIT_INPUT

    if report.get("kind") == "case-study" and not report.get("verified", True):
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
