"""Undirected simple graphs with stable vertex ids and s-plex predicates."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator


class Graph:
    """Undirected simple graph keyed by non-negative integer vertex ids.

    Deleting a vertex never renumbers the others, so ids recorded before a
    reduction stay meaningful afterwards.
    """

    __slots__ = ("_adj",)

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Iterable[tuple[int, int]] = (),
    ) -> None:
        self._adj: dict[int, set[int]] = {}
        for v in vertices:
            self.add_vertex(v)
        for u, v in edges:
            self.add_edge(u, v)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """Graph on vertices ``0..n-1`` with the given edges."""
        return cls(range(n), edges)

    # -- mutation ---------------------------------------------------------

    def add_vertex(self, v: int) -> None:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ValueError(f"vertex ids must be non-negative integers, got {v!r}")
        self._adj.setdefault(v, set())

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"self-loop on vertex {u}")
        self.add_vertex(u)
        self.add_vertex(v)
        self._adj[u].add(v)
        self._adj[v].add(u)

    def remove_vertex(self, v: int) -> set[int]:
        """Delete ``v`` and return its former neighborhood."""
        nbrs = self._adj.pop(self._check(v))
        for u in nbrs:
            self._adj[u].discard(v)
        return nbrs

    def remove_vertices(self, vs: Iterable[int]) -> None:
        for v in list(vs):
            self.remove_vertex(v)

    def restore_vertex(self, v: int, nbrs: Iterable[int]) -> None:
        """Undo :meth:`remove_vertex`."""
        self.add_vertex(v)
        for u in nbrs:
            self.add_edge(v, u)

    # -- queries ----------------------------------------------------------

    def _check(self, v: int) -> int:
        if v not in self._adj:
            raise KeyError(f"unknown vertex {v!r}")
        return v

    @property
    def adj(self) -> dict[int, set[int]]:
        """Raw adjacency map. Treat as read-only."""
        return self._adj

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._adj))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def vertices(self) -> list[int]:
        return sorted(self._adj)

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, nb in self._adj.items() for v in nb if u < v)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def degree(self, v: int) -> int:
        return len(self._adj[self._check(v)])

    def copy(self) -> Graph:
        g = Graph()
        g._adj = {v: set(nb) for v, nb in self._adj.items()}
        return g

    def subgraph(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph on ``vertices``."""
        keep = {self._check(v) for v in vertices}
        g = Graph()
        g._adj = {v: self._adj[v] & keep for v in keep}
        return g

    def without(self, vertices: Iterable[int]) -> Graph:
        """``G - vertices``; ids not in the graph are ignored."""
        drop = set(vertices)
        return self.subgraph(v for v in self._adj if v not in drop)


@dataclass(frozen=True)
class Instance:
    """A problem instance: delete at most ``k`` vertices so every component is an ``s``-plex."""

    graph: Graph
    k: int
    s: int

    def __post_init__(self) -> None:
        if self.s < 1:
            raise ValueError(f"s must be >= 1, got {self.s}")


def _require_s(s: int) -> None:
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")


def neighbors(g: Graph, v: int) -> frozenset[int]:
    return frozenset(g.adj[g._check(v)])


def set_neighborhood(g: Graph, vertices: Iterable[int]) -> frozenset[int]:
    """N(U): every vertex adjacent to some member of U, minus U itself."""
    us = set(vertices)
    out: set[int] = set()
    for u in us:
        out |= g.adj[g._check(u)]
    return frozenset(out - us)


def edges_between(
    g: Graph, us: Iterable[int], ws: Iterable[int]
) -> list[tuple[int, int]]:
    """Edges with one endpoint in ``us`` and the other in ``ws`` as (u, w) pairs."""
    uset, wset = set(us), set(ws)
    if uset & wset:
        raise ValueError("edges_between needs disjoint vertex sets")
    for v in uset | wset:
        g._check(v)
    return sorted((u, w) for u in uset for w in g.adj[u] & wset)


def connected_components(
    g: Graph, within: Iterable[int] | None = None
) -> list[frozenset[int]]:
    """Components ordered by their smallest vertex id.

    With ``within`` given, components of the induced subgraph on that set.
    """
    alive = set(g.adj) if within is None else set(within)
    seen: set[int] = set()
    comps = []
    for root in sorted(alive):
        if root in seen:
            continue
        seen.add(root)
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if w in alive and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    return comps


def is_splex(g: Graph, s: int, within: Iterable[int] | None = None) -> bool:
    """Every vertex is adjacent to at least ``n - s`` others (whole graph, not per component)."""
    _require_s(s)
    vs = set(g.adj) if within is None else set(within)
    need = len(vs) - s
    return all(len(g.adj[v] & vs) >= need for v in vs)


def violating_component(g: Graph, s: int) -> frozenset[int] | None:
    """First component (by smallest id) that is not an s-plex, if any."""
    _require_s(s)
    for comp in connected_components(g):
        if not is_splex(g, s, comp):
            return comp
    return None


def is_splex_cluster_graph(g: Graph, s: int) -> bool:
    return violating_component(g, s) is None
