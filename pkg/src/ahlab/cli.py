"""ah-lab command line: coefficient tables and verification sweeps.

Exit codes: 0 all checks pass or skipped, 1 a check failed or a conjecture
instance was refuted, 2 usage error, 3 I/O or internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .artin_hasse import compute_table
from .fp_algebra import is_prime
from .results import REGISTRY, VerificationReport
from .verifier import VerifyConfig, exit_code, run_all

EXIT_OK, EXIT_FINDING, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def coeffs_json(table) -> str:
    rows = [{"n": n, "num": str(num), "den": str(den), "a_n": a} for n, num, den, a in table.rows()]
    return json.dumps({"p": table.p, "max_n": table.N, "rows": rows}, indent=2) + "\n"


def report_json(report: VerificationReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def report_csv(report: VerificationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "name", "status", "params", "witness", "elapsed_ms"])
    for p, checks in report.primes:
        for c in checks:
            w.writerow(
                [
                    p,
                    c.name,
                    c.status,
                    json.dumps(c.params, sort_keys=True, separators=(",", ":")),
                    "" if c.witness is None else json.dumps(c.witness, sort_keys=True, separators=(",", ":")),
                    c.elapsed_ms,
                ]
            )
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_coeffs(args) -> int:
    if args.p < 3 or not is_prime(args.p):
        raise UsageError(f"--p must be an odd prime, got {args.p}")
    if args.max_n < 0:
        raise UsageError("--max-n must be non-negative")
    table = compute_table(args.p, args.max_n)
    _emit(coeffs_json(table) if args.format == "json" else table.to_csv(), args.out)
    return EXIT_OK


def parse_checks(raw: str | None) -> tuple[str, ...]:
    if raw is None:
        return REGISTRY
    names = tuple(s.strip() for s in raw.split(",") if s.strip())
    unknown = [n for n in names if n not in REGISTRY]
    if unknown:
        raise UsageError(f"unknown check(s): {', '.join(unknown)}\nvalid names: {', '.join(REGISTRY)}")
    return names


def build_config(args) -> VerifyConfig:
    try:
        return VerifyConfig(
            pmin=args.pmin,
            pmax=args.pmax,
            checks=parse_checks(args.checks),
            max_n=args.max_n,
            kmax=args.kmax,
            xmin=args.xmin,
            xmax=args.xmax,
            seed=args.seed,
            parallel=args.parallel,
            budget_s=args.budget,
            lemma_trials=args.trials,
            conj_kcap=args.conj_kcap,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_verify(args) -> int:
    config = build_config(args)
    report = run_all(config)
    _emit(report_json(report) if args.format == "json" else report_csv(report), args.out)
    totals = report.totals
    print(
        "totals: " + ", ".join(f"{k}={v}" for k, v in totals.items()),
        file=sys.stderr,
    )
    for c in report.all_results():
        if not c.ok:
            print(f"  p={c.prime} {c.name}: {c.status} {json.dumps(c.witness)}", file=sys.stderr)
    return exit_code(report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ah-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    co = sub.add_parser("coeffs", help="exact u_n and residues a_n")
    co.add_argument("--p", type=int, required=True)
    co.add_argument("--max-n", type=int, required=True)
    co.add_argument("--format", choices=("json", "csv"), default="csv")
    co.add_argument("--out")
    co.set_defaults(func=cmd_coeffs)

    ve = sub.add_parser("verify", help="run checks over a range of primes")
    ve.add_argument("--pmin", type=int, default=3)
    ve.add_argument("--pmax", type=int, default=31)
    ve.add_argument("--checks", help="comma-separated check names (default: all)")
    ve.add_argument("--max-n", type=int, help="minimum coefficient table depth")
    ve.add_argument("--kmax", type=int, help="range of the s_k checks")
    ve.add_argument("--xmin", type=int)
    ve.add_argument("--xmax", type=int)
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--trials", type=int, default=8, help="random series per prime in lemma-pound0")
    ve.add_argument("--parallel", type=int, default=1)
    ve.add_argument("--budget", type=float, help="per-check wall-time budget in seconds")
    ve.add_argument("--conj-kcap", type=int, help="also record the conjecture sum for p-1 < k <= K")
    ve.add_argument("--format", choices=("json", "csv"), default="json")
    ve.add_argument("--out")
    ve.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ah-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"ah-lab: I/O error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:
        print(f"ah-lab: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
