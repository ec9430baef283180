"""Benchmark harness: run (instance x variant x seed) grids from a JSON
manifest and aggregate best/average solution sizes per configuration."""

from __future__ import annotations

import csv
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .io import read_graph
from .solver import RunConfig, run

log = logging.getLogger("arir")

CSV_COLUMNS = ("instance", "variant", "runs", "max", "avg", "avg_time_to_best_s")


@dataclass(slots=True)
class BenchEntry:
    instance_path: str
    cutoff_s: float
    variants: list[str]
    seeds: list[int]
    format: str = "auto"
    index_base: str = "auto"
    m: int = 10_000
    n: int | None = None
    max_blocks: int | None = None


@dataclass(slots=True)
class BenchRow:
    instance: str
    variant: str
    runs: int
    max_size: int | None
    avg_size: float | None
    avg_time_to_best: float | None
    error: str | None = None


def load_manifest(path: str) -> list[BenchEntry]:
    """Parse and validate a manifest: a JSON list of entry objects."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, list):
        raise ValueError(f"{path}: manifest must be a JSON list")
    entries = []
    for i, item in enumerate(raw):
        try:
            entry = BenchEntry(**item)
        except TypeError as exc:
            raise ValueError(f"{path}: entry {i}: {exc}") from None
        if not entry.seeds:
            raise ValueError(f"{path}: entry {i}: seeds must be non-empty")
        if not entry.variants:
            raise ValueError(f"{path}: entry {i}: variants must be non-empty")
        if not os.path.exists(entry.instance_path):
            raise ValueError(
                f"{path}: entry {i}: instance {entry.instance_path} not found"
            )
        entries.append(entry)
    return entries


def _bench_task(payload: tuple) -> tuple[str, str, int, dict | None, str | None]:
    path, fmt, base, variant, seed, cutoff, m, n, max_blocks = payload
    name = os.path.splitext(os.path.basename(path))[0]
    try:
        graph = read_graph(path, fmt=fmt, index_base=base)
        config = RunConfig(
            variant=variant,
            m=m,
            n=n,
            cutoff_seconds=cutoff,
            seed=seed,
            max_blocks=max_blocks,
        )
        result = run(graph, config)
        return (name, variant, seed, result.stats, None)
    except Exception as exc:  # noqa: BLE001 - reported as an error row
        return (name, variant, seed, None, str(exc))


def run_bench(entries: list[BenchEntry], jobs: int = 1) -> list[BenchRow]:
    """Execute the whole grid and aggregate per (instance, variant).

    A failing instance yields error rows for its variants; other instances
    continue. Rows come back sorted by instance name then variant.
    """
    tasks = []
    for entry in entries:
        for variant in entry.variants:
            for seed in entry.seeds:
                tasks.append(
                    (
                        entry.instance_path,
                        entry.format,
                        entry.index_base,
                        variant,
                        seed,
                        entry.cutoff_s,
                        entry.m,
                        entry.n,
                        entry.max_blocks,
                    )
                )
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_bench_task, tasks))
    else:
        outcomes = [_bench_task(t) for t in tasks]

    grouped: dict[tuple[str, str], list] = {}
    failures: dict[tuple[str, str], str] = {}
    for name, variant, seed, stats, error in outcomes:
        key = (name, variant)
        if error is not None:
            failures[key] = error
            log.error("%s/%s seed %d failed: %s", name, variant, seed, error)
            continue
        grouped.setdefault(key, []).append(stats)

    rows = []
    for key in sorted(set(grouped) | set(failures)):
        name, variant = key
        if key in failures:
            rows.append(
                BenchRow(
                    instance=name,
                    variant=variant,
                    runs=0,
                    max_size=None,
                    avg_size=None,
                    avg_time_to_best=None,
                    error=failures[key],
                )
            )
            continue
        stats = grouped[key]
        sizes = [s["best_size"] for s in stats]
        times = [s["time_to_best_s"] for s in stats]
        rows.append(
            BenchRow(
                instance=name,
                variant=variant,
                runs=len(sizes),
                max_size=max(sizes),
                avg_size=sum(sizes) / len(sizes),
                avg_time_to_best=sum(times) / len(times),
            )
        )
    return rows


def write_csv(rows: list[BenchRow], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(
                [
                    row.instance,
                    row.variant,
                    row.runs,
                    "" if row.max_size is None else row.max_size,
                    "" if row.avg_size is None else f"{row.avg_size:.2f}",
                    ""
                    if row.avg_time_to_best is None
                    else f"{row.avg_time_to_best:.3f}",
                ]
            )
