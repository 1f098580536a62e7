"""Forbidden induced subgraphs (FISGs) of s-plex cluster graphs.

A graph is an s-plex cluster graph exactly when it has no connected induced
subgraph containing a vertex that misses ``s`` other vertices of it. Such a
subgraph is recorded as a :class:`Fisg` with the offending vertex as center.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .graph import Graph, connected_components


@dataclass(frozen=True)
class Fisg:
    vertices: frozenset[int]
    center: int
    non_neighbors: frozenset[int]

    def __len__(self) -> int:
        return len(self.vertices)

    def sorted_vertices(self) -> list[int]:
        return sorted(self.vertices)


class InvalidFisg(ValueError):
    pass


def _is_connected(g: Graph, vertices: set[int]) -> bool:
    if not vertices:
        return False
    root = next(iter(vertices))
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for w in g.adj[u] & vertices:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vertices)


def witness(g: Graph, vertices: Iterable[int], s: int) -> Fisg | None:
    """Read ``vertices`` as a FISG of ``g``.

    Returns the witness with the lowest-id admissible center, or ``None`` if
    the induced subgraph is disconnected or no vertex misses ``s`` others.
    """
    vs = set(vertices)
    if len(vs) < s + 2:
        return None
    for c in sorted(vs):
        missing = vs - g.adj[c] - {c}
        if len(missing) >= s:
            if not _is_connected(g, vs):
                return None
            return Fisg(frozenset(vs), c, frozenset(missing))
    return None


def validate_fisg(g: Graph, f: Fisg, s: int) -> None:
    """Raise :class:`InvalidFisg` unless ``f`` satisfies every Fisg invariant in ``g``."""
    vs = set(f.vertices)
    if not vs <= set(g.adj):
        raise InvalidFisg(f"vertices {sorted(vs - set(g.adj))} not in graph")
    if f.center not in vs:
        raise InvalidFisg(f"center {f.center} outside the witness")
    if not f.non_neighbors <= vs - {f.center}:
        raise InvalidFisg("non_neighbors must lie in the witness, excluding the center")
    if f.non_neighbors & g.adj[f.center]:
        raise InvalidFisg("center is adjacent to a listed non-neighbor")
    if len(f.non_neighbors) < s:
        raise InvalidFisg(f"only {len(f.non_neighbors)} non-neighbors, need {s}")
    if not _is_connected(g, vs):
        raise InvalidFisg("witness does not induce a connected subgraph")


def find_fisg(g: Graph, s: int) -> Fisg | None:
    """Return a FISG on at most ``2s + 1`` vertices, or ``None`` for s-plex cluster graphs.

    The center is the lowest-id vertex missing ``s`` vertices of its own
    component. A BFS from it supplies the ``s`` nearest non-neighbors; every
    distance-2 pick brings one BFS parent from the center's neighborhood, and
    deeper picks have their parents among the picks already. For ``s == 2``
    the witness is then minimized to four vertices.
    """
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    for comp in connected_components(g):
        size = len(comp)
        if size < s + 2:
            continue
        center = next(
            (v for v in sorted(comp) if size - 1 - len(g.adj[v]) >= s), None
        )
        if center is None:
            continue
        f = _bfs_witness(g, center, s)
        if s == 2:
            f = minimize_fisg(g, f, s)
        return f
    return None


def _bfs_witness(g: Graph, center: int, s: int) -> Fisg:
    dist = {center: 0}
    parent: dict[int, int] = {}
    queue = deque([center])
    while queue:
        u = queue.popleft()
        for w in sorted(g.adj[u]):
            if w not in dist:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
    far = [w for w, d in dist.items() if d >= 2]
    picked = sorted(far, key=lambda w: (dist[w], w))[:s]
    vs = {center, *picked}
    vs.update(parent[w] for w in picked if dist[w] == 2)
    return Fisg(frozenset(vs), center, frozenset(picked))


def minimize_fisg(g: Graph, f: Fisg, s: int) -> Fisg:
    """Greedily drop vertices (ascending id, repeated to a fixpoint) while a FISG remains."""
    validate_fisg(g, f, s)
    current = set(f.vertices)
    changed = True
    while changed:
        changed = False
        for v in sorted(current):
            if witness(g, current - {v}, s) is not None:
                current.discard(v)
                changed = True
    if current == set(f.vertices):
        return f
    out = witness(g, current, s)
    assert out is not None
    return out


def connected_sets(g: Graph, max_size: int) -> Iterator[frozenset[int]]:
    """Every vertex set of size <= ``max_size`` inducing a connected subgraph, once each.

    Enumeration by exclusive-neighborhood extension rooted at the smallest member.
    """

    def extend(sub: set[int], border: set[int], ext: set[int], root: int):
        yield frozenset(sub)
        if len(sub) == max_size:
            return
        ext = set(ext)
        while ext:
            w = min(ext)
            ext.discard(w)
            fresh = {u for u in g.adj[w] if u > root and u not in sub and u not in border}
            yield from extend(sub | {w}, border | g.adj[w], ext | fresh, root)

    for v in sorted(g.adj):
        yield from extend({v}, set(g.adj[v]) | {v}, {u for u in g.adj[v] if u > v}, v)


def enumerate_minimal_fisgs(g: Graph, s: int, max_size: int) -> list[Fisg]:
    """All inclusion-minimal FISGs with at most ``max_size`` vertices.

    Ordered by size, then by sorted vertex tuple.
    """
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    if max_size < s + 2:
        raise ValueError(f"max_size must be >= s + 2 = {s + 2}, got {max_size}")
    candidates = sorted(
        (c for c in connected_sets(g, max_size) if len(c) >= s + 2),
        key=lambda c: (len(c), sorted(c)),
    )
    found: list[Fisg] = []
    for c in candidates:
        if any(f.vertices < c for f in found):
            continue
        f = witness(g, c, s)
        if f is not None:
            found.append(f)
    return found
