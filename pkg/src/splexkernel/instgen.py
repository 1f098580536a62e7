"""Seeded instance generators.

All randomness comes from :class:`random.Random` (MT19937) seeded with the
given integer, and only through ``random()`` draws, so a port that
reproduces MT19937's 53-bit doubles reproduces every instance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import Graph, Instance

MAX_SHUFFLES = 64


@dataclass(frozen=True)
class GenSpec:
    seed: int
    s: int
    cluster_sizes: list[int]
    intra_missing: list[int] = field(default_factory=list)
    noise_vertices: int = 0
    noise_edge_prob: float = 0.5

    def __post_init__(self) -> None:
        if self.s < 1:
            raise ValueError(f"s must be >= 1, got {self.s}")
        if any(c < 1 for c in self.cluster_sizes):
            raise ValueError("cluster sizes must be positive")
        if self.intra_missing and len(self.intra_missing) != len(self.cluster_sizes):
            raise ValueError("intra_missing needs one entry per cluster")
        if any(m < 0 for m in self.intra_missing):
            raise ValueError("intra_missing entries must be >= 0")
        if self.noise_vertices < 0:
            raise ValueError("noise_vertices must be >= 0")
        if not 0.0 <= self.noise_edge_prob <= 1.0:
            raise ValueError("noise_edge_prob must lie in [0, 1]")


def _shuffle(rng: random.Random, items: list) -> None:
    # Fisher-Yates on rng.random() only; rng.shuffle's draws are not portable.
    for i in range(len(items) - 1, 0, -1):
        j = int(rng.random() * (i + 1))
        items[i], items[j] = items[j], items[i]


def _carve(rng: random.Random, members: list[int], missing: int, s: int) -> list[tuple[int, int]] | None:
    """Pick ``missing`` non-edges so no vertex misses more than ``s - 1`` others."""
    pairs = [(u, w) for i, u in enumerate(members) for w in members[i + 1 :]]
    for _ in range(MAX_SHUFFLES):
        _shuffle(rng, pairs)
        load = dict.fromkeys(members, 0)
        chosen = []
        for u, w in pairs:
            if len(chosen) == missing:
                break
            if load[u] < s - 1 and load[w] < s - 1:
                load[u] += 1
                load[w] += 1
                chosen.append((u, w))
        if len(chosen) == missing:
            return chosen
    return None


def generate(spec: GenSpec) -> tuple[Instance, frozenset[int]]:
    """Disjoint s-plex clusters plus randomly wired noise vertices.

    Clusters take ids ``0..`` in order, noise vertices follow. Returns the
    instance with ``k = noise_vertices`` and the planted solution (the noise).
    """
    rng = random.Random(spec.seed)
    missing = spec.intra_missing or [0] * len(spec.cluster_sizes)
    g = Graph()
    cluster_vertices: list[int] = []
    next_id = 0
    for size, miss in zip(spec.cluster_sizes, missing):
        members = list(range(next_id, next_id + size))
        next_id += size
        if miss * 2 > size * min(spec.s - 1, size - 1):
            raise ValueError(f"cannot remove {miss} edges from a cluster of {size} as an {spec.s}-plex")
        holes = _carve(rng, members, miss, spec.s)
        if holes is None:
            raise ValueError(f"could not place {miss} non-edges in a cluster of {size}")
        hole_set = set(holes)
        for v in members:
            g.add_vertex(v)
        for i, u in enumerate(members):
            for w in members[i + 1 :]:
                if (u, w) not in hole_set:
                    g.add_edge(u, w)
        cluster_vertices.extend(members)
    noise = list(range(next_id, next_id + spec.noise_vertices))
    for v in noise:
        g.add_vertex(v)
        for u in cluster_vertices:
            if rng.random() < spec.noise_edge_prob:
                g.add_edge(u, v)
    return Instance(g, spec.noise_vertices, spec.s), frozenset(noise)


def random_graph(seed: int, n: int, edge_prob: float) -> Graph:
    """G(n, p) on vertices ``0..n-1``; pairs drawn in lexicographic order."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge_prob must lie in [0, 1]")
    rng = random.Random(seed)
    g = Graph(range(n))
    for u in range(n):
        for w in range(u + 1, n):
            if rng.random() < edge_prob:
                g.add_edge(u, w)
    return g
