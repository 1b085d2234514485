"""Command-line front end: ``descent-lie run`` and ``descent-lie cache``.

Exit status: 0 when every claim passes, 1 when some claim fails (the report is
still written), 2 for usage or capacity errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .suites import DEFAULT_MAX_N, SUITES, SuiteConfig, UsageError, format_case, parse_case, run_suite
from .symgroup import MAX_N, CapacityError, check_capacity

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="descent-lie",
        description="Exact verification of descent algebra and Lie module identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run verification suites and write a JSON report")
    run.add_argument("--suite", choices=SUITES + ("all",), default="all")
    run.add_argument("--case", action="append", default=[], metavar="n=N,p=P|k=K,p=P",
                     help="repeatable; each suite has default cases when omitted")
    run.add_argument("--field", default=None, help="Z, Q or a prime, for descent cases without p")
    run.add_argument("--cache-dir", default=None,
                     help="idempotent cache directory (default: $DESCENT_LIE_CACHE_DIR, else none)")
    run.add_argument("--out", default=None, help="report path (default: standard output only)")
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("--max-n", type=int, default=DEFAULT_MAX_N,
                     help=f"largest degree allowed (default {DEFAULT_MAX_N}, at most {MAX_N})")
    run.add_argument("--timings", action="store_true", help="add integer milliseconds per claim")
    run.add_argument("-v", "--verbose", action="store_true", help="print every claim")

    cache = sub.add_parser("cache", help="manage the idempotent cache")
    cache.add_argument("action", choices=("build", "validate", "clear"))
    cache.add_argument("--case", action="append", default=[], metavar="n=N,p=P")
    cache.add_argument("--cache-dir", default=None)
    cache.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    return parser


def _cache_dir(arg, required: bool):
    import os

    from .idempotents import CACHE_ENV, default_cache_dir

    if arg:
        return Path(arg)
    if os.environ.get(CACHE_ENV) or required:
        return default_cache_dir()
    return None


def _cmd_run(args) -> int:
    cases = [parse_case(c) for c in args.case]
    config = SuiteConfig(
        suite=args.suite,
        cases=cases,
        field=args.field,
        cache_dir=str(d) if (d := _cache_dir(args.cache_dir, False)) else None,
        workers=args.workers,
        max_n=args.max_n,
        timings=args.timings,
    )
    report = run_suite(config)
    text = json.dumps(report.to_record(), indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    out = sys.stderr if not args.out else sys.stdout
    for claim in report.claims:
        if args.verbose or not claim.passed:
            print(f"{'PASS' if claim.passed else 'FAIL'} {claim.id}", file=out)
    failed = len(report.failed())
    print(f"{len(report.claims)} claims, {failed} failed: {'PASS' if report.passed else 'FAIL'}", file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def _cache_cases(args) -> list[tuple[int, int]] | None:
    if not args.case:
        return None
    out = []
    for text in args.case:
        case = parse_case(text)
        if set(case) != {"n", "p"}:
            raise UsageError(f"cache cases need n and p, got {format_case(case)}")
        check_capacity(case["n"], min(args.max_n, MAX_N))
        out.append((case["n"], case["p"]))
    return out


def _cmd_cache(args) -> int:
    from .idempotents import clear_cache, lift_idempotents, save_system, validate_cache

    if args.max_n > MAX_N:
        raise CapacityError(f"--max-n {args.max_n} refused: the hard ceiling is {MAX_N}")
    directory = _cache_dir(args.cache_dir, True)
    cases = _cache_cases(args)
    if args.action == "build":
        if cases is None:
            raise UsageError("cache build needs at least one --case n=N,p=P")
        for n, p in cases:
            path = save_system(lift_idempotents(n, p), directory)
            print(f"built {path}")
        return EXIT_OK
    if args.action == "validate":
        if not directory.is_dir():
            raise UsageError(f"cache directory {directory} does not exist")
        results = validate_cache(directory, cases)
        for (n, p), err in results.items():
            print(f"{'ok' if err is None else 'INVALID'} n={n},p={p}" + (f": {err}" if err else ""))
        return EXIT_OK if all(e is None for e in results.values()) else EXIT_FAIL
    removed = clear_cache(directory, cases) if directory.is_dir() else 0
    print(f"removed {removed} entries")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_cache(args)
    except (UsageError, CapacityError) as exc:
        print(f"descent-lie: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
