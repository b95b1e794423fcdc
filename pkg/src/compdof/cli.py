"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 parse/IO error,
3 budget exceeded, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import io as cio
from .assignment import GENERATOR_KINDS, GeneratorSpec, generate, validate
from .certificates import (
    admissible_grid,
    check_counting_inequalities,
    construct_certificate,
    construct_certificate_m3,
)
from .errors import (
    BudgetExceededError,
    InfeasibleSpecError,
    InvalidAssignmentError,
    ParseError,
    PreconditionError,
)
from .expansion import EXACT_CAP, dof_upper_bound, expansion_profile
from .search import (
    DEFAULT_ALPHAS,
    EXHAUSTIVE_BUDGET,
    epsilon_experiment,
    epsilon_threshold,
    eta_out_exact,
    eta_out_random,
    expansion_ratio,
    min_cooperation_order,
)
from .verify import SUITES, run_verification

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3, 4


def _u64(text):
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from None


def _fraction_list(text):
    return [_fraction(part) for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compdof",
        description="Cut-set DoF bounds and message-assignment search for interference channels with CoMP.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--seed", type=_u64, default=0)
    common.add_argument("--cap-k", type=int, default=None,
                        help=f"largest K for exact enumeration (default {EXACT_CAP}; search-exact: 4, or 6 for m=1)")
    common.add_argument("--format", choices=("json", "csv"), default=None)

    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, needs_input=False):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if needs_input:
            p.add_argument("--in", dest="input", metavar="PATH", required=True,
                           help="assignment JSON ('-' for stdin)")
        return p

    add("validate", "check an assignment file", True)
    add("bound", "exact cut-set bound with witness", True)
    p = add("profile", "expansion profile e(0..K)", True)
    p.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    p.add_argument("--samples", type=int, default=1000)
    add("certify", "greedy certificate for M >= 2", True)
    add("certify-m3", "two-phase certificate for M = 3", True)

    p = add("generate", "draw an assignment from a generator family")
    p.add_argument("--kind", choices=GENERATOR_KINDS, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--radius", type=int)
    p.add_argument("--wrap", action="store_true", help="successive sets wrap around modulo K")

    p = add("search-exact", "exhaustive eta_out(K, M)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--budget", type=int, default=EXHAUSTIVE_BUDGET)
    p.add_argument("--no-dedup", action="store_true")

    p = add("search-random", "random lower estimate of eta_out(K, M)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--kind", choices=("matching_union", "uniform_random"), default="matching_union")

    p = add("expansion", "e(i)/i at i = round(alpha K)", True)
    p.add_argument("--alpha", type=_fraction_list, default=list(DEFAULT_ALPHAS), metavar="LIST")

    p = add("epsilon", "union-bound threshold and optional matching-union experiment")
    p.add_argument("--epsilon", type=_fraction, required=True, metavar="P/Q")
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--trials", type=int, default=100)

    p = add("ineq-grid", "evaluate the counting inequalities on their admissible grid")
    p.add_argument("--variant", choices=("general", "m3", "both"), default="both")
    p.add_argument("--k-max", type=int, default=None)

    p = add("verify", "run the verification suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--trials", type=int, default=None)
    return parser


def _read_input(path):
    if path == "-":
        return cio.parse_assignment(sys.stdin.buffer.read())
    try:
        return cio.parse_assignment_file(path)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _emit(args, payload, csv_text=None):
    if csv_text is not None and args.format == "csv":
        text = csv_text
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run(args) -> int:
    cmd = args.command

    if cmd == "validate":
        try:
            raw = sys.stdin.buffer.read() if args.input == "-" else open(args.input, "rb").read()
        except OSError as exc:
            raise ParseError(f"cannot read {args.input}: {exc.strerror}") from None
        try:
            a = cio.parse_assignment(raw)
            report = validate(a)
        except InvalidAssignmentError as exc:
            report = exc.report
        _emit(args, cio.validation_to_dict(report))
        return EXIT_OK if report.valid else EXIT_INVALID

    if cmd == "bound":
        _emit(args, cio.bound_to_dict(dof_upper_bound(_read_input(args.input), cap=args.cap_k or EXACT_CAP)))
    elif cmd == "profile":
        p = expansion_profile(_read_input(args.input), args.mode, args.samples, args.seed, cap=args.cap_k or EXACT_CAP)
        args.format = args.format or "csv"
        _emit(args, cio.profile_to_dict(p), cio.profile_to_csv(p))
    elif cmd == "certify":
        _emit(args, cio.certificate_to_dict(construct_certificate(_read_input(args.input))))
    elif cmd == "certify-m3":
        _emit(args, cio.certificate_to_dict(construct_certificate_m3(_read_input(args.input))))
    elif cmd == "generate":
        spec = GeneratorSpec(args.kind, args.k, args.m, args.radius, True if args.wrap else None)
        _emit(args, cio.assignment_to_dict(generate(spec, args.seed)))
    elif cmd == "search-exact":
        _emit(args, cio.report_to_dict(eta_out_exact(args.k, args.m, args.budget, not args.no_dedup, args.cap_k)))
    elif cmd == "search-random":
        rep = eta_out_random(args.k, args.m, args.trials, args.seed, args.kind, cap=args.cap_k or EXACT_CAP)
        _emit(args, cio.report_to_dict(rep))
    elif cmd == "expansion":
        ratios = expansion_ratio(_read_input(args.input), args.alpha, cap=args.cap_k or EXACT_CAP)
        rows = [(str(al), cio.format_number(r)) for al, r in ratios.items()]
        _emit(
            args,
            {"ratios": [{"alpha": str(al), "ratio": cio.json_number(r)} for al, r in ratios.items()]},
            cio.rows_to_csv(["alpha", "ratio"], rows),
        )
    elif cmd == "epsilon":
        thr = epsilon_threshold(args.epsilon)
        if args.k is None:
            _emit(args, {"epsilon": str(args.epsilon), "threshold": thr,
                         "min_cooperation_order": min_cooperation_order(args.epsilon)})
        else:
            if args.m is None:
                raise PreconditionError("--m is required together with --k")
            x = epsilon_experiment(args.k, args.m, args.epsilon, args.trials, args.seed)
            payload = cio.experiment_to_dict(x)
            payload["threshold"] = thr
            _emit(args, payload, cio.experiment_to_csv(x))
    elif cmd == "ineq-grid":
        return _ineq_grid(args)
    elif cmd == "verify":
        report = run_verification(args.suite, args.seed, args.trials)
        for r in report.results:
            print(r.line(), file=sys.stderr)
        _emit(args, {
            "passed": report.passed,
            "first_failure": None if report.passed else report.first_failure.name,
            "checks": [
                {"criterion": r.criterion, "name": r.name, "passed": r.passed,
                 "observed": r.observed, "elapsed": r.elapsed}
                for r in report.results
            ],
        })
        return report.exit_code
    return EXIT_OK


def _ineq_grid(args) -> int:
    out = {}
    variants = ("general", "m3") if args.variant == "both" else (args.variant,)
    for variant in variants:
        if variant == "general":
            grid = admissible_grid("general", range(1, (args.k_max or 40) + 1), range(2, 7))
        else:
            grid = admissible_grid("m3", range(7, (args.k_max or 63) + 1, 8))
        checked, failures = 0, []
        for g in grid:
            checked += 1
            if not check_counting_inequalities(*g, variant=variant):
                failures.append(list(g))
        out[variant] = {"checked": checked, "failures": failures}
    _emit(args, out)
    return EXIT_VERIFY if any(v["failures"] for v in out.values()) else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidAssignmentError as exc:
        print(json.dumps(cio.validation_to_dict(exc.report), indent=2))
        return EXIT_INVALID
    except (PreconditionError, InfeasibleSpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.partial is not None and hasattr(exc.partial, "best_value"):
            print(json.dumps(cio.report_to_dict(exc.partial), indent=2))
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
