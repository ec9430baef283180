"""Readers and writers for Metis graphs, edge lists, and solution files."""

from __future__ import annotations

import logging
import os

from .graph import StaticGraph, build_graph

log = logging.getLogger("arir")

_MAX_ID = 2**63 - 1

_METIS_EXTENSIONS = {".graph", ".metis", ".mtx.graph"}
_EDGELIST_EXTENSIONS = {".edges", ".edgelist", ".el", ".txt", ".mtx"}


class ParseError(ValueError):
    """A graph or solution file could not be parsed."""


def _parse_id(token: str, where: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"{where}: expected integer, got {token!r}") from None
    if value > _MAX_ID:
        raise ParseError(f"{where}: id {value} overflows platform integer")
    return value


def detect_format(path: str) -> str:
    ext = os.path.splitext(path)[1].lower()
    if ext in _METIS_EXTENSIONS:
        return "metis"
    if ext in _EDGELIST_EXTENSIONS:
        return "edgelist"
    raise ParseError(
        f"cannot infer format from extension {ext!r}; pass --format explicitly"
    )


def read_graph(path: str, fmt: str = "auto", index_base: str = "auto") -> StaticGraph:
    if fmt == "auto":
        fmt = detect_format(path)
    if fmt == "metis":
        return read_metis(path)
    if fmt == "edgelist":
        return read_edgelist(path, index_base=index_base)
    raise ParseError(f"unknown graph format {fmt!r}")


def read_metis(path: str) -> StaticGraph:
    """Read a Metis-format graph: header "n m", then line i lists the
    (1-based) neighbors of vertex i. '%' comment lines are skipped."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln for ln in fh if not ln.lstrip().startswith("%")]
    if not lines:
        raise ParseError(f"{path}: empty metis file")
    header = lines[0].split()
    if len(header) < 2:
        raise ParseError(f"{path}: metis header needs 'n m', got {lines[0]!r}")
    n = _parse_id(header[0], f"{path} header")
    m = _parse_id(header[1], f"{path} header")
    if len(header) >= 3 and header[2].strip("0") != "":
        raise ParseError(f"{path}: weighted metis format {header[2]} unsupported")
    if n <= 0:
        raise ParseError(f"{path}: empty graph undefined")
    edges = []
    for i in range(n):
        if i + 1 >= len(lines):
            break
        for tok in lines[i + 1].split():
            u = _parse_id(tok, f"{path} line {i + 2}")
            if not 1 <= u <= n:
                raise ParseError(f"{path} line {i + 2}: neighbor id {u} out of range")
            edges.append((i, u - 1))
    graph = build_graph(edges, vertex_count_hint=n)
    if graph.edge_count != m:
        log.info(
            "%s: header claims %d edges, adjacency holds %d; using recount",
            path,
            m,
            graph.edge_count,
        )
    return graph


def write_metis(graph: StaticGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{graph.vertex_count} {graph.edge_count}\n")
        for a in graph.adjacency:
            fh.write(" ".join(str(u + 1) for u in a))
            fh.write("\n")


def read_edgelist(path: str, index_base: str = "auto") -> StaticGraph:
    """Read a whitespace-separated "u v" edge list; '#'/'%' lines are comments.

    index_base "auto" treats the file as 1-based when the smallest id is 1.
    """
    if index_base not in ("auto", "0", "1", 0, 1):
        raise ParseError(f"invalid index base {index_base!r}")
    pairs: list[tuple[int, int]] = []
    min_id = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped[0] in "#%":
                continue
            toks = stripped.split()
            if len(toks) != 2:
                raise ParseError(
                    f"{path} line {lineno}: expected 'u v', got {stripped!r}"
                )
            u = _parse_id(toks[0], f"{path} line {lineno}")
            v = _parse_id(toks[1], f"{path} line {lineno}")
            if u < 0 or v < 0:
                raise ParseError(f"{path} line {lineno}: negative id")
            pairs.append((u, v))
            low = min(u, v)
            if min_id is None or low < min_id:
                min_id = low
    if not pairs:
        raise ParseError(f"{path}: empty graph undefined")
    base = 1 if str(index_base) == "1" else 0
    if index_base == "auto" and min_id == 1:
        base = 1
    if base == 1:
        if min_id == 0:
            raise ParseError(f"{path}: id 0 present in a 1-based edge list")
        pairs = [(u - 1, v - 1) for u, v in pairs]
    return build_graph(pairs)


def write_edgelist(graph: StaticGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# {graph.vertex_count} vertices, {graph.edge_count} edges\n")
        for v, a in enumerate(graph.adjacency):
            for u in a:
                if v < u:
                    fh.write(f"{v} {u}\n")


def read_solution(path: str) -> set[int]:
    """Read a solution file: one 0-based vertex id per line, '#' comments."""
    out: set[int] = set()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            out.add(_parse_id(stripped, f"{path} line {lineno}"))
    return out


def write_solution(solution: set[int], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# size={len(solution)}\n")
        for v in sorted(solution):
            fh.write(f"{v}\n")
