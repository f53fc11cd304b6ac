"""Command-line front end: gen, pairs, reconstruct, verify, bench, fit.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bench import X_VARIABLES, fit_loglog, format_csv, parse_csv, run_series
from .errors import MbconnError
from .fast import edge_seed_violations, reconstruct_fast
from .grid import format_report
from .mbc import parse_mbc, write_mbc
from .naive import reconstruct_naive
from .oracle import reconstruct_oracle, reports_equal
from .pairs import enumerate_all, format_pairs
from .synth import SynthSpec, format_ground_truth, generate_split, parse_ground_truth, scaling_series

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _dims(text: str) -> tuple[int, int, int]:
    values = _int_list(text)
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"expected NI,NJ,NK, got {text!r}")
    return values


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load(path: str):
    grid, patches = parse_mbc(_read(path))
    return grid, patches, enumerate_all(grid, patches)


def cmd_gen(args) -> int:
    if args.full_map and not args.ground_truth:
        raise InputError("--full-map needs --ground-truth")
    spec = SynthSpec(*args.dims, args.cuts_i, args.cuts_j, args.cuts_k)
    grid, patches, truth = generate_split(spec)
    Path(args.output).write_text(write_mbc(grid, patches), encoding="utf-8")
    if args.ground_truth:
        Path(args.ground_truth).write_text(format_ground_truth(truth, grid, args.full_map), encoding="utf-8")
    return EXIT_OK


def cmd_pairs(args) -> int:
    _, _, pairs = _load(args.grid)
    _emit(format_pairs(pairs), args.output)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    grid, _, pairs = _load(args.grid)
    pairs = sorted(pairs)
    if args.algo == "naive":
        report = reconstruct_naive(grid, pairs)
    elif args.algo == "fast":
        report = reconstruct_fast(grid, pairs, indexed=args.indexed_buckets)
    else:
        report = reconstruct_oracle(pairs)
    _emit(format_report(report), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    grid, _, pairs = _load(args.grid)
    pairs = sorted(pairs)
    truth = None
    if args.ground_truth:
        try:
            truth = parse_ground_truth(_read(args.ground_truth).decode("utf-8"))
        except (ValueError, KeyError, IndexError) as exc:
            raise InputError(f"bad ground-truth file: {exc}") from None

    oracle = reconstruct_oracle(pairs)
    naive = reconstruct_naive(grid, pairs)
    fast = reconstruct_fast(grid, pairs)
    checks: list[tuple[str, bool, str]] = [
        ("naive == oracle", reports_equal(naive, oracle), ""),
        ("fast == oracle", reports_equal(fast, oracle), ""),
        ("naive == fast", reports_equal(naive, fast), ""),
    ]
    missing = edge_seed_violations(grid, oracle)
    checks.append(
        ("every class has an edge node", not missing, f"{len(missing)} class(es) without one" if missing else "")
    )

    if truth is not None:
        census = oracle.size_census()
        got = (census.get(4, 0), census.get(8, 0), oracle.singular_node_count, oracle.singular_class_count)
        want = (truth.n_size4, truth.n_size8, truth.singular_nodes, truth.singular_classes)
        other_sizes = set(census) - {4, 8}
        checks.append(("census matches ground truth", got == want and not other_sizes, f"got {got}, want {want}"))
        if truth.points:
            sizes = sorted(len(c) for c in oracle.classes)
            checks.append(("class sizes match point copies", sizes == sorted(truth.points.values()), ""))
        if truth.mapping:
            bad = 0
            for c in oracle.classes:
                gids = {truth.mapping.get(m) for m in c}
                if len(gids) != 1 or truth.points.get(gids.pop()) != len(c):
                    bad += 1
            checks.append(("each class is one global point", bad == 0, f"{bad} bad class(es)" if bad else ""))

    print(f"grid {args.grid}: {grid.n_blocks} blocks, {grid.node_count} nodes, {len(pairs)} pairs")
    print(f"singular classes {oracle.singular_class_count}, singular nodes {oracle.singular_node_count}")
    failed = False
    for name, ok, detail in checks:
        failed |= not ok
        print(f"{'ok  ' if ok else 'FAIL'} {name}" + (f" ({detail})" if detail and not ok else ""))
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_bench(args) -> int:
    base = SynthSpec(*args.series_base, args.cuts_i, args.cuts_j, args.cuts_k)
    specs = scaling_series(base, args.steps, axes=args.axes)
    engines = [e for e in args.engines.split(",") if e]
    for e in engines:
        if e not in ("naive", "fast"):
            raise InputError(f"unknown engine {e!r}; benchmarks take naive and fast")
    records = run_series(specs, engines, args.reps, args.naive_budget_secs)
    _emit(format_csv(records), args.output)
    return EXIT_OK


def cmd_fit(args) -> int:
    try:
        records = parse_csv(_read(args.csv).decode("utf-8"))
    except ValueError as exc:
        raise InputError(f"bad benchmark CSV: {exc}") from None
    fit = fit_loglog([r for r in records if r.algo == args.algo], x=args.x)
    print(f"algo {args.algo}  x {args.x}  points {fit.points}")
    print(f"slope {fit.slope:.4f}")
    print(f"intercept {fit.intercept:.4f}")
    print(f"residual {fit.residual:.4f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbconn", description="Singular connectivity of 1-to-1 multi-block structured grids."
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def cuts(p):
        p.add_argument("--cuts-i", type=_int_list, default=())
        p.add_argument("--cuts-j", type=_int_list, default=())
        p.add_argument("--cuts-k", type=_int_list, default=())

    p = sub.add_parser("gen", help="write a box split into blocks as MBC")
    p.add_argument("--dims", type=_dims, required=True, metavar="NI,NJ,NK")
    cuts(p)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--ground-truth", metavar="PATH")
    p.add_argument("--full-map", action="store_true", help="also write every node's global point id")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("pairs", help="dump the node pairs implied by the interfaces")
    p.add_argument("grid")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("reconstruct", help="write the singular classes of a grid")
    p.add_argument("--algo", choices=("naive", "fast", "oracle"), required=True)
    p.add_argument("grid")
    p.add_argument("-o", "--output")
    p.add_argument(
        "--indexed-buckets", action="store_true", help="fast engine: flat partner index instead of per-block buckets"
    )
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("verify", help="cross-check all engines and the ground truth")
    p.add_argument("grid")
    p.add_argument("--ground-truth", metavar="PATH")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time the engines over a fixed-dims scaling series")
    p.add_argument("--series-base", type=_dims, required=True, metavar="NI,NJ,NK")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--naive-budget-secs", type=float, default=300.0)
    p.add_argument("--axes", default="ijk", help="axes refined at each step (others keep --cuts-*)")
    p.add_argument("--engines", default="fast,naive")
    cuts(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("fit", help="log-log slope of wall time from a benchmark CSV")
    p.add_argument("csv")
    p.add_argument("--algo", choices=("naive", "fast"), required=True)
    p.add_argument("--x", choices=sorted(X_VARIABLES), default="singular-nodes")
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (MbconnError, InputError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
