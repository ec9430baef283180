"""Command-line frontend: solve, bench, verify, kernelize, oracle."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .bench import load_manifest, run_bench, write_csv
from .graph import ContractError
from .io import ParseError, read_graph, read_solution, write_metis, write_solution
from .oracle import exact_mis
from .reductions import RULESETS, kernelize
from .solver import VARIANTS, RunConfig, run

log = logging.getLogger("arir")

STATS_KEYS = (
    "instance",
    "variant",
    "seed",
    "cutoff_s",
    "best_size",
    "time_to_best_s",
    "rounds",
    "restarts",
    "kernel_vertices",
    "fixed_by_kernel",
)


def _setup_logging() -> None:
    level = os.environ.get("ARIR_LOG", "off").lower()
    if level == "off":
        logging.disable(logging.CRITICAL)
        return
    logging.disable(logging.NOTSET)
    if not log.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        log.addHandler(handler)
    log.setLevel(logging.DEBUG if level == "debug" else logging.INFO)


def _add_input_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="instance file")
    parser.add_argument(
        "--format", choices=("metis", "edgelist", "auto"), default="auto"
    )
    parser.add_argument("--index-base", choices=("0", "1", "auto"), default="auto")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arir", description="maximum independent set solver"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one instance")
    _add_input_args(p_solve)
    p_solve.add_argument("--variant", choices=VARIANTS, default="arir2")
    p_solve.add_argument("--time-limit", type=float, default=10.0, metavar="SECONDS")
    p_solve.add_argument("--seed", type=int, default=1)
    p_solve.add_argument("--m", type=int, default=10_000)
    p_solve.add_argument("--adapt-n", type=int, default=100_000)
    p_solve.add_argument(
        "--max-blocks",
        type=int,
        default=None,
        help="stop after this many search blocks instead of a wall-clock cutoff",
    )
    p_solve.add_argument("--emit-solution", metavar="PATH")

    p_bench = sub.add_parser("bench", help="run a benchmark manifest")
    p_bench.add_argument("--manifest", required=True)
    p_bench.add_argument("--csv", required=True, metavar="PATH")
    p_bench.add_argument("--jobs", type=int, default=1)

    p_verify = sub.add_parser("verify", help="check a solution file")
    p_verify.add_argument("graph_path")
    p_verify.add_argument("solution_path")
    p_verify.add_argument(
        "--format", choices=("metis", "edgelist", "auto"), default="auto"
    )
    p_verify.add_argument("--index-base", choices=("0", "1", "auto"), default="auto")

    p_kern = sub.add_parser("kernelize", help="reduce an instance to its kernel")
    _add_input_args(p_kern)
    p_kern.add_argument("--ruleset", choices=sorted(RULESETS), default="advanced")
    p_kern.add_argument("--kernel-out", metavar="PATH")
    p_kern.add_argument("--log-out", metavar="PATH")

    p_oracle = sub.add_parser("oracle", help="exact solve a small instance")
    _add_input_args(p_oracle)

    return parser


def cmd_solve(args) -> int:
    try:
        graph = read_graph(args.input, fmt=args.format, index_base=args.index_base)
        config = RunConfig(
            variant=args.variant,
            m=args.m,
            n=args.adapt_n,
            cutoff_seconds=args.time_limit,
            seed=args.seed,
            max_blocks=args.max_blocks,
        ).validated()
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        result = run(graph, config)
    except ContractError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 3
    record = {"instance": os.path.splitext(os.path.basename(args.input))[0]}
    record.update({k: result.stats.get(k) for k in STATS_KEYS if k != "instance"})
    print(json.dumps(record))
    if args.emit_solution:
        write_solution(result.solution, args.emit_solution)
    return 0


def cmd_bench(args) -> int:
    try:
        entries = load_manifest(args.manifest)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rows = run_bench(entries, jobs=args.jobs)
    write_csv(rows, args.csv)
    for row in rows:
        if row.error is not None:
            print(f"error: {row.instance}/{row.variant}: {row.error}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    try:
        graph = read_graph(
            args.graph_path, fmt=args.format, index_base=args.index_base
        )
        solution = read_solution(args.solution_path)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for v in solution:
        if not 0 <= v < graph.vertex_count:
            print(f"error: vertex id {v} out of range", file=sys.stderr)
            return 2
    independent = True
    for v in solution:
        for u in graph.adjacency[v]:
            if u in solution:
                independent = False
                break
        if not independent:
            break
    maximal = independent and all(
        v in solution or any(u in solution for u in graph.adjacency[v])
        for v in range(graph.vertex_count)
    )
    print(
        f"size={len(solution)} independent={'true' if independent else 'false'} "
        f"maximal={'true' if maximal else 'false'}"
    )
    return 0 if independent else 1


def cmd_kernelize(args) -> int:
    try:
        graph = read_graph(args.input, fmt=args.format, index_base=args.index_base)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    result = kernelize(graph, args.ruleset)
    stem = os.path.splitext(args.input)[0]
    kernel_path = args.kernel_out or f"{stem}.kernel.graph"
    log_path = args.log_out or f"{stem}.kernel.log"
    if result.kernel.vertex_count > 0:
        write_metis(result.kernel, kernel_path)
    else:
        with open(kernel_path, "w", encoding="utf-8") as fh:
            fh.write("0 0\n")
    with open(log_path, "w", encoding="utf-8") as fh:
        fh.write(f"# fixed={result.fixed_count} folds={result.fold_count}\n")
        for line in result.log.to_lines():
            fh.write(line + "\n")
    print(
        f"kernel {result.kernel.vertex_count} {result.kernel.edge_count} "
        f"{result.fixed_count} {result.fold_count}"
    )
    return 0


def cmd_oracle(args) -> int:
    try:
        graph = read_graph(args.input, fmt=args.format, index_base=args.index_base)
        result = exact_mis(graph)
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"alpha={result.alpha}")
    print(" ".join(str(v) for v in sorted(result.witness)))
    return 0


_COMMANDS = {
    "solve": cmd_solve,
    "bench": cmd_bench,
    "verify": cmd_verify,
    "kernelize": cmd_kernelize,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
