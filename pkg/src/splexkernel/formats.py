"""Plain-text graph and solution files, and the JSON kernel report."""

from __future__ import annotations

import json
from typing import Iterable

from .graph import Graph
from .kernel import NO_INSTANCE, KernelResult


class FormatError(ValueError):
    """Malformed input file; the message names the offending line."""

    def __init__(self, line: int, msg: str) -> None:
        super().__init__(f"line {line}: {msg}")
        self.line = line


def _content_lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield number, stripped.split()


def _ints(number: int, fields: list[str], count: int) -> list[int]:
    if len(fields) != count:
        raise FormatError(number, f"expected {count} integers, got {len(fields)} fields")
    bad = [f for f in fields if not (f.isascii() and f.isdigit())]
    if bad:
        raise FormatError(number, f"{bad[0]!r} is not a non-negative decimal integer")
    return [int(f) for f in fields]


def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` header format; vertices are ``0..n-1``."""
    lines = iter(_content_lines(text))
    header = next(lines, None)
    if header is None:
        raise FormatError(1, "missing 'n m' header")
    number, fields = header
    n, m = _ints(number, fields, 2)
    g = Graph(range(n))
    seen = 0
    last = number
    for number, fields in lines:
        last = number
        u, v = _ints(number, fields, 2)
        if not u < v:
            raise FormatError(number, f"edge {u} {v} must satisfy u < v")
        if v >= n:
            raise FormatError(number, f"vertex {v} out of range for n={n}")
        if g.has_edge(u, v):
            raise FormatError(number, f"duplicate edge {u} {v}")
        seen += 1
        if seen > m:
            raise FormatError(number, f"more than m={m} edge lines")
        g.add_edge(u, v)
    if seen != m:
        raise FormatError(last, f"expected {m} edge lines, found {seen}")
    return g


def serialize_graph(g: Graph) -> str:
    """Inverse of :func:`parse_graph`; vertices must be exactly ``0..n-1``."""
    if g.vertices() != list(range(g.n)):
        raise ValueError("serialize_graph needs vertices 0..n-1; relabel first")
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}", *(f"{u} {v}" for u, v in edges)]
    return "\n".join(lines) + "\n"


def relabel(g: Graph) -> tuple[Graph, list[int]]:
    """Dense copy on ``0..n-1`` plus ``id_map[new] = old``."""
    id_map = g.vertices()
    index = {v: i for i, v in enumerate(id_map)}
    dense = Graph(range(len(id_map)), ((index[u], index[v]) for u, v in g.edges()))
    return dense, id_map


def parse_solution(text: str) -> list[int]:
    """Whitespace-separated vertex ids; ``#`` starts a comment line."""
    ids: list[int] = []
    for number, fields in _content_lines(text):
        ids.extend(_ints(number, fields, len(fields)))
    return ids


def serialize_solution(vertices: Iterable[int]) -> str:
    return " ".join(map(str, sorted(vertices))) + "\n"


def kernel_report(kr: KernelResult, s: int) -> dict:
    """JSON-ready summary; ``reduced_graph`` and ``k_out`` are null for no-instances."""
    reduced = None
    k_out = None
    if kr.status != NO_INSTANCE:
        dense, id_map = relabel(kr.reduced.graph)
        reduced = {"n": dense.n, "edges": [list(e) for e in dense.edges()], "id_map": id_map}
        k_out = kr.k_out
    return {
        "status": kr.status,
        "s": s,
        "k_in": kr.k_in,
        "k_out": k_out,
        "forced": sorted(kr.forced),
        "reduced_graph": reduced,
        "trace": [
            {"rule": e.rule, "removed_vertex": e.removed_vertex, "details": e.details}
            for e in kr.trace
        ],
        "reason": kr.reason,
    }


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
