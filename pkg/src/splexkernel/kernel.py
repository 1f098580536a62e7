"""Kernelization for s-plex cluster vertex deletion (s >= 2).

Pipeline, single pass and in this order:

1. greedy approximate solution ``X`` built from vertex-disjoint FISGs,
   stopping with a no-answer once ``k + 1`` of them are found;
2. peripheral set ``M = U M(v)`` from three phases of FISG collection around
   each ``v`` in ``X``;
3. rule 1: ``v`` in ``X`` with more than ``k`` collected FISGs is forced
   into the solution (its FISGs pairwise meet only in ``v``);
4. rule 2: components of ``G - X`` with no edge to ``X`` are dropped;
5. rule 3: redundant sets ``R(H)`` are cut down to ``k + 2s - 1`` vertices;
6. rule 4: components whose unmarked part ``H - M`` misses ``X`` keep at
   most ``|H & M| + 2s - 3`` unmarked vertices.

Every removal is logged so a solution of the kernel can be lifted back
(see :func:`splexkernel.solver.lift_solution`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .fisg import Fisg, find_fisg
from .graph import Graph, Instance, connected_components, is_splex_cluster_graph

ALL_RULES = (1, 2, 3, 4)

REDUCED = "reduced"
NO_INSTANCE = "no_instance"


def witness_size_bound(s: int) -> int:
    """Largest witness :func:`find_fisg` returns; also the approximation factor."""
    return 4 if s == 2 else 2 * s + 1


def marks_per_fisg(s: int) -> int:
    """Most vertices one phase firing adds to ``M(v)``."""
    return 3 if s == 2 else 2 * s


# -- approximate solution ---------------------------------------------------


@dataclass
class ApproxSolution:
    vertices: frozenset[int]
    witnesses: list[Fisg]
    exceeded: bool = False
    """True when the run stopped early after ``stop_after`` disjoint FISGs."""


def approx_solution(g: Graph, s: int, stop_after: int | None = None) -> ApproxSolution:
    """Delete vertex-disjoint FISGs until an s-plex cluster graph remains.

    The result is within factor :func:`witness_size_bound` of optimal. With
    ``stop_after`` set, returns as soon as that many disjoint FISGs exist,
    which certifies that fewer deletions cannot suffice.
    """
    h = g.copy()
    taken: set[int] = set()
    witnesses: list[Fisg] = []
    while True:
        if stop_after is not None and len(witnesses) >= stop_after:
            return ApproxSolution(frozenset(taken), witnesses, exceeded=True)
        f = find_fisg(h, s)
        if f is None:
            return ApproxSolution(frozenset(taken), witnesses)
        witnesses.append(f)
        taken |= f.vertices
        h.remove_vertices(f.vertices)


# -- partition and peripheral sets ------------------------------------------


@dataclass
class Partition:
    """A solution ``x`` and the components of ``G - x``."""

    x: frozenset[int]
    components: list[frozenset[int]]
    membership: dict[int, int]

    @classmethod
    def of(cls, g: Graph, x: Iterable[int]) -> Partition:
        xs = frozenset(x)
        comps = connected_components(g, (v for v in g.adj if v not in xs))
        member = {v: i for i, comp in enumerate(comps) for v in comp}
        return cls(xs, comps, member)

    def x_neighbors(self, g: Graph, vertices: Iterable[int]) -> frozenset[int]:
        """Vertices of ``x`` adjacent to some member of ``vertices``."""
        out: set[int] = set()
        for u in vertices:
            out |= g.adj[u] & self.x
        return frozenset(out)


@dataclass
class PeripheralSet:
    per_vertex: dict[int, set[int]] = field(default_factory=dict)
    fisg_count: dict[int, int] = field(default_factory=dict)

    @property
    def union(self) -> frozenset[int]:
        out: set[int] = set()
        for mv in self.per_vertex.values():
            out |= mv
        return frozenset(out)

    def drop(self, v: int) -> None:
        self.per_vertex.pop(v, None)
        self.fisg_count.pop(v, None)


def _require_solution(g: Graph, x: Iterable[int], s: int) -> frozenset[int]:
    xs = frozenset(x)
    if not xs <= set(g.adj):
        raise ValueError("x contains vertices outside the graph")
    if not is_splex_cluster_graph(g.without(xs), s):
        raise ValueError("G - x is not an s-plex cluster graph")
    return xs


def build_peripheral_set(g: Graph, x: Iterable[int], s: int) -> PeripheralSet:
    """Collect FISGs around each ``v`` in ``x`` that pairwise meet only in ``v``.

    Per ``v`` (ascending), each phase runs to exhaustion before the next:

    * phase 1: ``s + 1`` unmarked non-``x`` neighbors of ``v``, one of which
      misses all the others;
    * phase 2: a component ``H`` where ``v`` sees an unmarked ``u`` and misses
      ``2s - 2`` unmarked vertices;
    * phase 3: ``v`` sees unmarked vertices in two different components. For
      ``s == 2`` this can only happen when ``v`` has exactly two unmarked
      non-``x`` neighbors ``u, w``; a further unmarked neighbor ``t`` of either
      completes the FISG. For larger ``s`` one of the two components must keep
      ``2s - 1`` unmarked vertices.

    Each firing marks the FISG minus ``v`` and bumps ``fisg_count[v]``.
    """
    if s < 2:
        raise ValueError("peripheral sets need s >= 2")
    xs = _require_solution(g, x, s)
    part = Partition.of(g, xs)
    out = PeripheralSet()
    for v in sorted(xs):
        mv: set[int] = set()
        count = 0
        while (hit := _phase1(g, xs, v, mv, s)) is not None:
            mv.update(hit)
            count += 1
        while (hit := _phase2(g, part, v, mv, s)) is not None:
            mv.update(hit)
            count += 1
        phase3 = _phase3_pair if s == 2 else _phase3
        while (hit := phase3(g, part, v, mv, s)) is not None:
            mv.update(hit)
            count += 1
        out.per_vertex[v] = mv
        out.fisg_count[v] = count
    return out


def _open_neighbors(g: Graph, xs: frozenset[int], v: int, mv: set[int]) -> list[int]:
    return sorted(u for u in g.adj[v] if u not in xs and u not in mv)


def _phase1(g, xs, v, mv, s):
    cand = _open_neighbors(g, xs, v, mv)
    for u in cand:
        missed = [w for w in cand if w != u and w not in g.adj[u]]
        if len(missed) >= s:
            return [u, *missed[:s]]
    return None


def _phase2(g, part, v, mv, s):
    tried: set[int] = set()
    for u in _open_neighbors(g, part.x, v, mv):
        h = part.membership[u]
        if h in tried:
            continue
        tried.add(h)
        missed = sorted(w for w in part.components[h] if w not in mv and w not in g.adj[v])
        if len(missed) >= 2 * s - 2:
            return [u, *missed[: 2 * s - 2]]
    return None


def _phase3_pair(g, part, v, mv, s):
    cand = _open_neighbors(g, part.x, v, mv)
    if len(cand) != 2:
        return None
    u, w = cand
    if part.membership[u] == part.membership[w]:
        return None
    ts = sorted((g.adj[u] | g.adj[w]) - part.x - mv - {u, w})
    if not ts:
        return None
    return [ts[0], u, w]


def _phase3(g, part, v, mv, s):
    first_seen: dict[int, int] = {}
    for u in _open_neighbors(g, part.x, v, mv):
        first_seen.setdefault(part.membership[u], u)
    if len(first_seen) < 2:
        return None
    for hw, w in sorted(first_seen.items()):
        rest = sorted(z for z in part.components[hw] if z not in mv and z != w)
        if len(rest) + 1 < 2 * s - 1:
            continue
        hu = min(h for h in first_seen if h != hw)
        return [first_seen[hu], w, *rest[: 2 * s - 2]]
    return None


def is_peripheral(g: Graph, x: Iterable[int], m: Iterable[int], s: int) -> bool:
    """Check the three peripheral conditions for every ``v`` in ``x``.

    For each ``v``, over the components ``H`` of ``G - x`` whose unmarked part
    ``H - m`` touches ``v``: there are at most ``s`` of them; ``v`` misses at
    most ``2s - 3`` vertices of each ``H - m``; and if there are two or more,
    each ``H - m`` has at most ``2s - 2`` vertices.
    """
    if s < 2:
        raise ValueError("peripheral sets need s >= 2")
    xs = _require_solution(g, x, s)
    ms = set(m)
    part = Partition.of(g, xs)
    free = [comp - ms for comp in part.components]
    for v in xs:
        touched = [hm for hm in free if hm & g.adj[v]]
        if len(touched) > s:
            return False
        if any(len(hm - g.adj[v]) > 2 * s - 3 for hm in touched):
            return False
        if len(touched) > 1 and any(len(hm) > 2 * s - 2 for hm in touched):
            return False
    return True


# -- redundant sets ---------------------------------------------------------


@dataclass(frozen=True)
class RedundantSet:
    component: int
    r: frozenset[int]
    a: frozenset[int]
    b: frozenset[int]
    c: frozenset[int]


def _missing_some(g: Graph, h: frozenset[int], targets: Iterable[int]) -> frozenset[int]:
    """Members of ``h`` nonadjacent to at least one (other) vertex of ``targets``."""
    out: set[int] = set()
    for w in targets:
        out |= h - g.adj[w] - {w}
    return frozenset(out)


def build_redundant_set(
    g: Graph, part: Partition, m: Iterable[int], component: int
) -> RedundantSet:
    """Redundant subset of component ``H`` with respect to ``X`` and ``M``.

    ``A`` misses part of ``H & M``, ``B`` misses part of ``N_X(H - M)``, ``C``
    misses part of ``B``; what is left outside ``M`` is ``R(H)``.
    """
    h = part.components[component]
    hm = h & frozenset(m)
    a = _missing_some(g, h, hm)
    b = _missing_some(g, h, part.x_neighbors(g, h - hm))
    c = _missing_some(g, h, b)
    r = h - a - b - c - hm
    return RedundantSet(component, r, a, b, c)


def is_redundant(g: Graph, x: Iterable[int], r: Iterable[int], h: Iterable[int]) -> bool:
    """Whether some X-module ``Z`` with ``r <= Z <= h`` holds every ``h``-vertex missing part of ``r``.

    The smallest candidate is ``r`` plus those vertices; it works iff all of
    its members share one neighborhood inside ``x``.
    """
    rs, hs, xs = frozenset(r), frozenset(h), frozenset(x)
    if not rs <= hs:
        raise ValueError("r must be a subset of h")
    z = rs | _missing_some(g, hs, rs)
    return len({frozenset(g.adj[u] & xs) for u in z}) <= 1


# -- reduction state and rules ----------------------------------------------


@dataclass
class TraceEntry:
    rule: str
    removed_vertex: int | None
    details: dict = field(default_factory=dict)


@dataclass
class KernelResult:
    reduced: Instance
    forced: tuple[int, ...]
    trace: list[TraceEntry]
    status: str
    reason: str | None = None
    approx: frozenset[int] = frozenset()
    """The approximate solution ``X`` the pipeline started from."""
    x: frozenset[int] = frozenset()
    """``X`` after rule 1."""
    marked: frozenset[int] = frozenset()
    """Peripheral set restricted to the reduced graph."""
    k_in: int = 0

    @property
    def k_out(self) -> int:
        return self.reduced.k


@dataclass
class ReductionState:
    """Mutable working copy threaded through the rules."""

    graph: Graph
    k: int
    s: int
    x: set[int]
    peripheral: PeripheralSet
    k_in: int = 0
    approx: frozenset[int] = frozenset()
    forced: list[int] = field(default_factory=list)
    trace: list[TraceEntry] = field(default_factory=list)
    status: str = REDUCED
    reason: str | None = None

    @property
    def marked(self) -> frozenset[int]:
        return frozenset(v for v in self.peripheral.union if v in self.graph)

    def partition(self) -> Partition:
        return Partition.of(self.graph, self.x)

    def remove(self, v: int, rule: str, **details) -> None:
        self.graph.remove_vertex(v)
        self.trace.append(TraceEntry(rule, v, details))

    def result(self) -> KernelResult:
        return KernelResult(
            reduced=Instance(self.graph, self.k, self.s),
            forced=tuple(self.forced),
            trace=self.trace,
            status=self.status,
            reason=self.reason,
            approx=self.approx,
            x=frozenset(self.x),
            marked=self.marked,
            k_in=self.k_in,
        )


def prepare(inst: Instance) -> ReductionState:
    """Copy the instance, compute ``X`` and the peripheral set.

    The returned state may already be final: ``status`` is ``no_instance``
    when more than ``k`` disjoint FISGs exist, and trivial instances (empty
    graph, or ``k >= n``) come back reduced to the empty graph.
    """
    s, k = inst.s, inst.k
    if s < 2:
        raise ValueError("kernelization needs s >= 2; use the branching solver for s = 1")
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    g = inst.graph.copy()
    state = ReductionState(g, k, s, set(), PeripheralSet(), k_in=k)
    if g.n == 0 or k >= g.n:
        # Any solution at all has at most n <= k vertices.
        sol = approx_solution(g, s).vertices
        g.remove_vertices(g.vertices())
        state.trace.append(TraceEntry("trivial", None, {"solution": sorted(sol)}))
        return state
    approx = approx_solution(g, s, stop_after=k + 1)
    state.approx = approx.vertices
    if approx.exceeded:
        state.status = NO_INSTANCE
        state.reason = f"found {k + 1} vertex-disjoint forbidden subgraphs"
        return state
    if len(approx.vertices) > witness_size_bound(s) * k:
        state.status = NO_INSTANCE
        state.reason = "approximate solution exceeds the factor bound"
        return state
    state.x = set(approx.vertices)
    state.peripheral = build_peripheral_set(g, state.x, s)
    return state


def apply_rule1(state: ReductionState) -> None:
    """Force every ``v`` in ``X`` with more than ``k`` collected FISGs; exhaustive."""
    changed = True
    while changed and state.status == REDUCED:
        changed = False
        for v in sorted(state.x):
            if state.peripheral.fisg_count.get(v, 0) > state.k:
                state.x.discard(v)
                state.peripheral.drop(v)
                state.forced.append(v)
                state.k -= 1
                state.remove(v, "rule1", fisgs=state.k + 1)
                changed = True
                if state.k < 0:
                    state.status = NO_INSTANCE
                    state.reason = "forced deletions exceed k"
                    return


def apply_rule2(state: ReductionState) -> None:
    """Drop components of ``G - X`` without an edge to ``X``."""
    part = state.partition()
    for i, comp in enumerate(part.components):
        if not part.x_neighbors(state.graph, comp):
            for v in sorted(comp):
                state.remove(v, "rule2", component=sorted(comp))


def apply_rule3(state: ReductionState) -> None:
    """Shrink each redundant set ``R(H)`` to ``k + 2s - 1`` vertices, dropping lowest ids."""
    part = state.partition()
    m = state.marked
    keep = state.k + 2 * state.s - 1
    for i in range(len(part.components)):
        red = build_redundant_set(state.graph, part, m, i)
        excess = len(red.r) - keep
        if excess <= 0:
            continue
        for v in sorted(red.r)[:excess]:
            state.remove(v, "rule3", redundant=sorted(red.r), kept=keep)


def apply_rule4(state: ReductionState) -> None:
    """Shrink components whose unmarked part misses ``X``.

    Such an ``H`` keeps at most ``|H & M| + 2s - 3`` unmarked vertices. The
    log records ``H & M``, ``H - M`` and the edges from ``H`` to ``X``, which
    lifting needs.
    """
    part = state.partition()
    m = state.marked
    slack = 2 * state.s - 3
    g = state.graph
    for i, comp in enumerate(part.components):
        inside = comp & m
        outside = comp - m
        if part.x_neighbors(g, outside):
            continue
        excess = len(outside) - (len(inside) + slack)
        if excess <= 0:
            continue
        x_edges = sorted((u, w) for u in inside for w in g.adj[u] & part.x)
        details = {
            "component": min(comp),
            "boundary": sorted(inside),
            "core": sorted(outside),
            "x_edges": [list(e) for e in x_edges],
        }
        for v in sorted(outside)[:excess]:
            state.remove(v, "rule4", **details)


_RULES = {1: apply_rule1, 2: apply_rule2, 3: apply_rule3, 4: apply_rule4}


def kernelize(inst: Instance, rules: Iterable[int] = ALL_RULES) -> KernelResult:
    """Reduce ``inst`` to an equivalent instance with O(k^2 s^3) vertices.

    ``rules`` selects which of rules 1-4 run (in ascending order); the
    default runs all of them, which is what the size bound assumes.
    """
    chosen = sorted(set(rules))
    if not set(chosen) <= set(_RULES):
        raise ValueError(f"unknown rules {sorted(set(chosen) - set(_RULES))}")
    state = prepare(inst)
    for r in chosen:
        if state.status != REDUCED:
            break
        _RULES[r](state)
    return state.result()


def size_bound(k: int, s: int, x_size: int) -> int:
    """Upper bound on the reduced vertex count given ``|X|`` (original ``k``).

    Sums ``|X| + |M|`` and the unmarked parts of all components:
    ``|M| <= marks_per_fisg(s) * k * |X|`` after rule 1; components whose
    unmarked part misses ``X`` contribute ``|H & M| + 2s - 3`` (at most
    ``|M|`` of them); the remaining ones contribute
    ``(s - 1)|H & M| + s(2s - 3)|N_X| + k + 2s - 1`` or at most ``2s - 2``.
    Gives ``(10k + 6)|X|`` for ``s = 2``.
    """
    marked = marks_per_fisg(s) * k * x_size
    return x_size * (2 * s * s - s + k) + (3 * s - 3) * marked
