"""Exact solvers, the brute-force oracle, solution lifting and hitting-set export."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .fisg import enumerate_minimal_fisgs, find_fisg, minimize_fisg
from .graph import Graph, Instance, is_splex_cluster_graph
from .kernel import NO_INSTANCE, KernelResult, kernelize, witness_size_bound

DEFAULT_CAP = 16


class LiftingError(RuntimeError):
    """A lifted solution failed verification; always an implementation bug."""


def fingerprint(inst: Instance) -> str:
    """Stable hash of ``(graph, k, s)``."""
    text = f"{inst.s} {inst.k} {inst.graph.vertices()} {inst.graph.edges()}"
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class Solution:
    vertices: frozenset[int]
    valid_for: str

    @classmethod
    def of(cls, inst: Instance, vertices: Iterable[int]) -> Solution:
        return cls(frozenset(vertices), fingerprint(inst))

    def sorted(self) -> list[int]:
        return sorted(self.vertices)


def verify_solution(inst: Instance, sol: Iterable[int]) -> bool:
    """``|sol| <= k`` and deleting ``sol`` leaves an s-plex cluster graph."""
    vs = set(sol)
    if not vs <= set(inst.graph.adj) or len(vs) > inst.k:
        return False
    return is_splex_cluster_graph(inst.graph.without(vs), inst.s)


# -- branching --------------------------------------------------------------


def solve_branching(inst: Instance) -> Solution | None:
    """Depth-bounded search: find a FISG, try deleting each of its vertices in id order."""
    if inst.k < 0:
        raise ValueError(f"k must be >= 0, got {inst.k}")
    g = inst.graph.copy()
    s = inst.s
    bound = witness_size_bound(s)
    picked: list[int] = []

    def branch(budget: int) -> bool:
        f = find_fisg(g, s)
        if f is None:
            return True
        if budget == 0:
            return False
        f = minimize_fisg(g, f, s)
        assert len(f) <= bound
        for v in f.sorted_vertices():
            nbrs = g.remove_vertex(v)
            picked.append(v)
            found = branch(budget - 1)
            g.restore_vertex(v, nbrs)
            if found:
                return True
            picked.pop()
        return False

    if branch(inst.k):
        return Solution.of(inst, picked)
    return None


# -- brute force ------------------------------------------------------------


class _Bits:
    """Bitmask view of a graph on vertices indexed ``0..n-1``."""

    def __init__(self, g: Graph) -> None:
        self.ids = g.vertices()
        index = {v: i for i, v in enumerate(self.ids)}
        self.nbr = [0] * len(self.ids)
        for u, v in g.edges():
            self.nbr[index[u]] |= 1 << index[v]
            self.nbr[index[v]] |= 1 << index[u]
        self.full = (1 << len(self.ids)) - 1

    def is_cluster(self, alive: int, s: int) -> bool:
        rest = alive
        while rest:
            low = rest & -rest
            comp, frontier = low, low
            while frontier:
                bit = frontier & -frontier
                frontier ^= bit
                new = self.nbr[bit.bit_length() - 1] & alive & ~comp
                comp |= new
                frontier |= new
            rest &= ~comp
            need = comp.bit_count() - s
            c = comp
            while c:
                bit = c & -c
                c ^= bit
                if (self.nbr[bit.bit_length() - 1] & comp).bit_count() < need:
                    return False
        return True

    def decode(self, mask: int) -> frozenset[int]:
        return frozenset(v for i, v in enumerate(self.ids) if mask >> i & 1)


def _check_cap(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise ValueError(f"brute force refuses n={g.n} > cap={cap}")


def brute_force_minimum(
    g: Graph, s: int, limit: int | None = None, cap: int = DEFAULT_CAP
) -> frozenset[int] | None:
    """A minimum solution by exhaustive search over subsets of increasing size.

    Returns ``None`` if every solution is larger than ``limit``. Among equal
    sizes the lexicographically smallest index tuple wins.
    """
    _check_cap(g, cap)
    bits = _Bits(g)
    n = len(bits.ids)
    top = n if limit is None else min(limit, n)
    for size in range(top + 1):
        for combo in combinations(range(n), size):
            drop = 0
            for i in combo:
                drop |= 1 << i
            if bits.is_cluster(bits.full & ~drop, s):
                return bits.decode(drop)
    return None


def brute_force_decide(inst: Instance, cap: int = DEFAULT_CAP) -> Solution | None:
    """Ground-truth oracle: a minimum solution of size ``<= k``, or ``None``."""
    if inst.k < 0:
        return None
    sol = brute_force_minimum(inst.graph, inst.s, inst.k, cap)
    return None if sol is None else Solution.of(inst, sol)


# -- kernel composition -----------------------------------------------------


def lift_solution(kernel: KernelResult, kernel_sol: Iterable[int], original: Instance) -> Solution:
    """Turn a solution of ``kernel.reduced`` into one for ``original``.

    Replays the trace backwards. Rules 2 and 3 need nothing. Each component
    shrunk by rule 4 is checked: if some recorded edge between its marked
    part and ``X`` survives, its unmarked part (removed vertices included) is
    swapped out for the marked part. Rule-1 vertices are added back.
    """
    sol = set(kernel_sol)
    handled: set[int] = set()
    for entry in reversed(kernel.trace):
        if entry.rule == "trivial":
            sol = set(entry.details["solution"])
        elif entry.rule == "rule1":
            sol.add(entry.removed_vertex)
        elif entry.rule == "rule4":
            key = entry.details["component"]
            if key in handled:
                continue
            handled.add(key)
            edges = entry.details["x_edges"]
            if any(h not in sol and x not in sol for h, x in edges):
                sol |= set(entry.details["boundary"])
                sol -= set(entry.details["core"])
    if not verify_solution(original, sol):
        raise LiftingError(f"lifted set {sorted(sol)} is not a solution of size <= {original.k}")
    return Solution.of(original, sol)


def solve(inst: Instance, use_kernel: bool = True) -> Solution | None:
    """Decide the instance exactly, kernelizing first when ``s >= 2``."""
    if inst.k < 0:
        raise ValueError(f"k must be >= 0, got {inst.k}")
    if inst.s == 1 or not use_kernel:
        sol = solve_branching(inst)
    else:
        kr = kernelize(inst)
        if kr.status == NO_INSTANCE:
            return None
        inner = solve_branching(kr.reduced)
        if inner is None:
            return None
        sol = lift_solution(kr, inner.vertices, inst)
    if sol is not None and not verify_solution(inst, sol.vertices):
        raise LiftingError("solver returned an invalid solution")
    return sol


# -- hitting set ------------------------------------------------------------


@dataclass(frozen=True)
class HittingSetInstance:
    ground: tuple[int, ...]
    sets: tuple[tuple[int, ...], ...]
    k: int
    complete: bool
    """Whether hitting sets of ``sets`` are exactly the solutions."""

    def to_text(self) -> str:
        lines = [f"h {len(self.ground)} {len(self.sets)} {self.k}"]
        lines += [" ".join(map(str, c)) for c in self.sets]
        return "\n".join(lines) + "\n"

    def is_hit_by(self, t: Iterable[int]) -> bool:
        ts = set(t)
        return all(ts.intersection(c) for c in self.sets)


def export_hitting_set(inst: Instance, max_size: int) -> HittingSetInstance:
    """Vertex sets of all minimal FISGs up to ``max_size`` vertices.

    Minimal FISGs never exceed the finder's witness bound (the finder run
    inside one returns a subset of it), so the export is complete once
    ``max_size`` reaches that bound.
    """
    found = enumerate_minimal_fisgs(inst.graph, inst.s, max_size)
    sets = tuple(tuple(f.sorted_vertices()) for f in found)
    return HittingSetInstance(
        ground=tuple(inst.graph.vertices()),
        sets=sets,
        k=inst.k,
        complete=max_size >= witness_size_bound(inst.s),
    )
