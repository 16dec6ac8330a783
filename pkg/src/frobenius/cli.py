"""Command-line interface.

Exit codes: 0 success (for ``test``: Frobenius prime), 1 composite or a
failed check, 2 invalid input.
"""

from __future__ import annotations

import argparse
import os
import sys

from .arith import U64_LIMIT
from .exactquad import factors_except_one_scan
from .frobtest import IndexCapExceeded, NotApplicable, Verdict, frobenius_index, frobenius_test
from .harness import report as rep
from .harness.props import ALL_CHECKS, SuiteConfig, run_proposition_suite
from .harness.scan import check_list, count_fermat_pseudoprimes, scan_range
from .structure import CSV_HEADER, consistent_pairs, phi_sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# Ranges or bounds above these need --long-run.
SCAN_WIDTH_LIMIT = 10**9
COUNT_LIMIT = 10**9


def u64(text: str) -> int:
    if not text.isdigit():
        raise argparse.ArgumentTypeError(f"not an unsigned decimal integer: {text!r}")
    value = int(text)
    if value >= U64_LIMIT:
        raise argparse.ArgumentTypeError(f"{text} does not fit in 64 bits")
    return value


def radicand(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value in (0, 1):
        raise argparse.ArgumentTypeError("radicand must not be 0 or 1")
    return value


def positive(text: str) -> int:
    value = u64(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "text", "csv"), help="report format")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--threads", type=positive, default=os.cpu_count() or 1)
    common.add_argument("--long-run", action="store_true", help="allow hours-long jobs")
    common.add_argument("--seed", type=int, help="reserved; every algorithm is deterministic")

    parser = argparse.ArgumentParser(prog="frobenius", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", parents=[common], help="Frobenius-test one number")
    p.add_argument("n", type=u64)

    p = sub.add_parser("index", parents=[common], help="Frobenius index of n")
    p.add_argument("n", type=u64)

    p = sub.add_parser("scan", parents=[common], help="test every odd n in [lo, hi)")
    p.add_argument("lo", type=u64)
    p.add_argument("hi", type=u64)

    p = sub.add_parser("check-list", parents=[common], help="run a file of integers through the test")
    p.add_argument("path")

    p = sub.add_parser("phi", parents=[common], help="profiles of candidate prime factors")
    p.add_argument("--c", type=radicand, required=True)
    p.add_argument("--p-max", type=positive, required=True)
    p.add_argument("--sign", choices=("+", "-", "both"), default="both")
    p.add_argument("--all", action="store_true", help="also list inadmissible split primes")

    p = sub.add_parser("pairs", parents=[common], help="consistent prime pairs")
    p.add_argument("--c", type=radicand, required=True)
    p.add_argument("--p-max", type=positive, required=True)

    p = sub.add_parser("except-one", parents=[common], help="cofactor gcd search")
    p.add_argument("--c", type=radicand, required=True)
    p.add_argument("--q-max", type=positive, required=True)
    p.add_argument("--n-bound", type=int, help="only test n = q*p up to this bound")

    p = sub.add_parser("props", parents=[common], help="desk-scale proposition suite")
    p.add_argument("--which", default=",".join(ALL_CHECKS))
    p.add_argument("--bound", type=positive, default=SuiteConfig.bound)
    p.add_argument("--scan-hi", type=positive, default=SuiteConfig.scan_hi)
    p.add_argument("--p-max", type=positive, default=SuiteConfig.multiple_p_max)
    p.add_argument("--q-max", type=positive, default=SuiteConfig.except_one_q_max)

    p = sub.add_parser("count-psp", parents=[common], help="count Fermat pseudoprimes below hi")
    p.add_argument("hi", type=u64)
    p.add_argument("--bases", type=int_list, default=[2])
    return parser


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(args, command: str, config: dict, payload: dict, header=None, rows=None, default="json") -> None:
    fmt = args.output or default
    if fmt == "json" or (fmt != "json" and header is None):
        _emit(args, rep.to_json(rep.envelope(command, config, payload)))
    elif fmt == "csv":
        _emit(args, rep.to_csv(header, rows))
    else:
        stamp = f"# {command} version={rep.__version__} config_hash={rep.config_hash(config)}\n"
        _emit(args, stamp + rep.text_table(header, rows))


def _scan_checkpoint(part) -> None:
    print(f"checkpoint: [{part.lo}, {part.hi}) tested={part.tested} hits={len(part.fpp_hits)}",
          file=sys.stderr, flush=True)


def _count_checkpoint(end: int, total: int) -> None:
    print(f"checkpoint: below {end}: {total}", file=sys.stderr, flush=True)


def cmd_test(args) -> int:
    outcome = frobenius_test(args.n)
    if args.output == "json":
        _emit(args, rep.to_json(rep.envelope("test", {"n": args.n}, outcome.to_dict())))
    else:
        line = outcome.describe()
        if outcome.diagnostics:
            d = outcome.diagnostics
            line += f" base={d.base[0]}+{d.base[1]}*sqrt({d.c}) residue={d.residue[0]}+{d.residue[1]}*sqrt({d.c})"
        _emit(args, line + "\n")
    return EXIT_OK if outcome.verdict is Verdict.FROBENIUS_PRIME else EXIT_FAIL


def cmd_index(args) -> int:
    try:
        c = frobenius_index(args.n)
    except (NotApplicable, IndexCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output == "json":
        _emit(args, rep.to_json(rep.envelope("index", {"n": args.n}, {"index": c})))
    else:
        _emit(args, f"{c}\n")
    return EXIT_OK


def cmd_scan(args) -> int:
    if not 3 <= args.lo < args.hi:
        print(f"error: need 3 <= lo < hi, got [{args.lo}, {args.hi})", file=sys.stderr)
        return EXIT_USAGE
    if args.hi - args.lo > SCAN_WIDTH_LIMIT and not args.long_run:
        print("error: ranges wider than 10^9 need --long-run", file=sys.stderr)
        return EXIT_USAGE
    progress = _scan_checkpoint if args.long_run else None
    report = scan_range(args.lo, args.hi, args.threads, progress=progress)
    config = {"lo": args.lo, "hi": args.hi}
    rows = [[report.lo, report.hi, report.tested, report.primes, report.squares,
             len(report.fpp_hits), len(report.disagreements), f"{report.elapsed:.2f}"]]
    header = ["lo", "hi", "tested", "primes", "squares", "fpp_hits", "disagreements", "seconds"]
    _render(args, "scan", config, report.to_dict(), header, rows)
    return EXIT_OK if not report.disagreements else EXIT_FAIL


def cmd_check_list(args) -> int:
    try:
        report = check_list(args.path)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    d = report.to_dict()
    header = ["source", "entries", "rejected", "passed", "primes", "malformed"]
    rows = [[d["source"], d["entries"], d["rejected_by_frobenius"], len(d["passed"]),
             d["confirmed_primes"], d["malformed_lines"]]]
    _render(args, "check-list", {"path": args.path}, d, header, rows)
    return EXIT_OK if not report.passed else EXIT_FAIL


def cmd_phi(args) -> int:
    sign = {"+": 1, "-": -1, "both": None}[args.sign]
    profiles = phi_sweep(args.c, args.p_max, sign, include_inadmissible=args.all)
    rows = [f.csv_row() for f in profiles]
    payload = {"profiles": [dict(zip(CSV_HEADER, r)) for r in rows], "count": len(rows)}
    config = {"c": args.c, "p_max": args.p_max, "sign": args.sign, "all": args.all}
    _render(args, "phi", config, payload, CSV_HEADER, rows)
    return EXIT_OK


def cmd_pairs(args) -> int:
    pairs = consistent_pairs(args.c, args.p_max)
    payload = {"pairs": [list(p) for p in pairs], "count": len(pairs)}
    _render(args, "pairs", {"c": args.c, "p_max": args.p_max}, payload,
            ["p1", "p2"], [list(p) for p in pairs])
    return EXIT_OK


def cmd_except_one(args) -> int:
    rows = factors_except_one_scan(args.c, args.q_max, args.n_bound, workers=args.threads)
    header = ["q", "d_bits", "primes", "verdicts"]
    table = [[r.q, r.d_bits, " ".join(map(str, r.primes)),
              " ".join(f"{p}:{v}" for p, v in r.verdicts.items())] for r in rows]
    fpp = [(r.q, p) for r in rows for p, v in r.verdicts.items() if v == "fpp"]
    payload = {
        "rows": len(rows),
        "fpp": fpp,
        "relation_holds": [(r.q, p) for r in rows for p, v in r.verdicts.items() if v == "relation-holds"],
        "unresolved": [(r.q, r.unresolved.bit_length()) for r in rows if r.unresolved != 1],
    }
    config = {"c": args.c, "q_max": args.q_max, "n_bound": args.n_bound}
    _render(args, "except-one", config, payload, header, table)
    return EXIT_OK if not fpp else EXIT_FAIL


def cmd_props(args) -> int:
    which = tuple(w for w in args.which.split(",") if w)
    unknown = set(which) - set(ALL_CHECKS)
    if unknown:
        print(f"error: unknown checks {sorted(unknown)}; choose from {', '.join(ALL_CHECKS)}", file=sys.stderr)
        return EXIT_USAGE
    cfg = SuiteConfig(which=which, bound=args.bound, scan_hi=args.scan_hi,
                      multiple_p_max=args.p_max, except_one_q_max=args.q_max,
                      workers=args.threads)
    result = run_proposition_suite(cfg)
    config = result.pop("config")
    config.pop("workers")
    rows = [[r["name"], "pass" if r["passed"] else "FAIL", r["elapsed"]] for r in result["results"]]
    _render(args, "props", config, result, ["check", "result", "seconds"], rows)
    return EXIT_OK if result["passed"] else EXIT_FAIL


def cmd_count_psp(args) -> int:
    if args.hi > COUNT_LIMIT and not args.long_run:
        print("error: counts above 10^9 need --long-run", file=sys.stderr)
        return EXIT_USAGE
    progress = _count_checkpoint if args.long_run else None
    count = count_fermat_pseudoprimes(args.hi, args.bases, progress=progress)
    config = {"hi": args.hi, "bases": args.bases}
    _render(args, "count-psp", config, {"count": count},
            ["hi", "bases", "count"], [[args.hi, ",".join(map(str, args.bases)), count]])
    return EXIT_OK


COMMANDS = {
    "test": cmd_test,
    "index": cmd_index,
    "scan": cmd_scan,
    "check-list": cmd_check_list,
    "phi": cmd_phi,
    "pairs": cmd_pairs,
    "except-one": cmd_except_one,
    "props": cmd_props,
    "count-psp": cmd_count_psp,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
