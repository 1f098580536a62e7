from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_graphs, naive_optimum, to_nx
from shapes import complete, cycle, disjoint, graphs, path, star
from splexkernel.graph import Graph, Instance
from splexkernel.instgen import GenSpec, generate, random_graph
from splexkernel.kernel import KernelResult, TraceEntry, kernelize
from splexkernel.solver import (
    HittingSetInstance,
    LiftingError,
    Solution,
    brute_force_decide,
    brute_force_minimum,
    export_hitting_set,
    fingerprint,
    lift_solution,
    solve,
    solve_branching,
    verify_solution,
)


def test_branching_examples():
    p4 = Instance(path(4), 1, 2)
    sol = solve_branching(p4)
    assert sol is not None and len(sol.vertices) == 1
    for v in range(4):
        assert verify_solution(p4, {v})
    assert solve_branching(Instance(star(3), 0, 2)) is None
    assert solve_branching(Instance(disjoint(cycle(4), complete(3)), 0, 2)).vertices == frozenset()


def test_brute_force_examples():
    assert brute_force_decide(Instance(path(4), 0, 2)) is None
    assert len(brute_force_decide(Instance(path(4), 1, 2)).vertices) == 1
    two = disjoint(path(4), path(4))
    assert brute_force_decide(Instance(two, 1, 2)) is None
    assert len(brute_force_decide(Instance(two, 2, 2)).vertices) == 2


def test_brute_force_cap():
    with pytest.raises(ValueError):
        brute_force_decide(Instance(path(17), 1, 2))
    assert brute_force_decide(Instance(path(17), 5, 2), cap=17) is not None


def test_verify_examples():
    g = path(5)
    assert verify_solution(Instance(g, 5, 2), g.vertices())
    assert not verify_solution(Instance(g, 5, 2), set())
    assert not verify_solution(Instance(g, 0, 2), {2})
    assert not verify_solution(Instance(g, 3, 2), {9})


def test_solution_fingerprint():
    inst = Instance(path(4), 1, 2)
    assert solve(inst).valid_for == fingerprint(inst)
    assert fingerprint(inst) != fingerprint(Instance(path(4), 2, 2))


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=9), st.integers(1, 3))
def test_bitmask_oracle_matches_naive(g, s):
    best = brute_force_minimum(g, s)
    assert len(best) == naive_optimum(to_nx(g), s)
    assert verify_solution(Instance(g, len(best), s), best)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_solve_matches_oracle(s):
    rng = random.Random(s)
    for i in range(200):
        g = random_graph(1000 * s + i, 5 + int(rng.random() * 7), (0.2, 0.5, 0.8)[i % 3])
        opt = len(brute_force_minimum(g, s))
        for k in range(5):
            inst = Instance(g, k, s)
            for use_kernel in (True, False):
                sol = solve(inst, use_kernel=use_kernel)
                assert (sol is not None) == (opt <= k)
                if sol is not None:
                    assert verify_solution(inst, sol.vertices)


def test_solve_planted():
    for seed in range(40):
        inst, planted = generate(GenSpec(seed, 2, [5, 4, 6], [2, 1, 3], 2, 0.4))
        sol = solve(inst)
        assert sol is not None and len(sol.vertices) <= len(planted)


def test_solve_no_instance_kernel():
    assert solve(Instance(disjoint(path(4), path(4)), 1, 2)) is None


def test_lift_empty_trace():
    inst = Instance(path(4), 1, 2)
    kr = KernelResult(inst, (), [], "reduced", k_in=1)
    assert lift_solution(kr, {1}, inst).vertices == {1}


def test_lift_rule1_only():
    g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6)])
    original = Instance(g, 1, 2)
    reduced = Instance(g.without({0}), 0, 2)
    kr = KernelResult(reduced, (0,), [TraceEntry("rule1", 0, {})], "reduced", k_in=1)
    assert lift_solution(kr, set(), original).vertices == {0}


def test_lift_failure_raises():
    inst = Instance(path(4), 1, 2)
    kr = KernelResult(inst, (), [], "reduced", k_in=1)
    with pytest.raises(LiftingError):
        lift_solution(kr, set(), inst)


def test_lift_rule4_swap():
    # Rule 4 keeps marked vertex 1 of a K6 tied to x=0. Kernel solution {0}
    # destroys edge (1, 0) and survives as is; {5} does not and is swapped for {1}.
    g = complete(6, offset=1)
    g.add_edge(0, 1)
    trace = [
        TraceEntry("rule4", v, {"component": 1, "boundary": [1], "core": [2, 3, 4, 5, 6], "x_edges": [[1, 0]]})
        for v in (2, 3, 4)
    ]
    reduced = Instance(g.without({2, 3, 4}), 1, 2)
    kr = KernelResult(reduced, (), trace, "reduced", k_in=1)
    assert lift_solution(kr, {0}, Instance(g, 1, 2)).vertices == {0}
    assert lift_solution(kr, {5}, Instance(g, 1, 2)).vertices == {1}


def test_lift_end_to_end():
    rng = random.Random(7)
    for i in range(300):
        g = random_graph(7000 + i, 5 + int(rng.random() * 8), (0.2, 0.5, 0.8)[i % 3])
        s = 2 + i % 2
        for k in range(5):
            inst = Instance(g, k, s)
            kr = kernelize(inst)
            if kr.status != "reduced":
                continue
            inner = brute_force_minimum(kr.reduced.graph, s, kr.k_out)
            if inner is None:
                continue
            lifted = lift_solution(kr, inner, inst)
            assert verify_solution(inst, lifted.vertices)


def test_hitting_set_examples():
    hs = export_hitting_set(Instance(path(4), 1, 2), 4)
    assert hs.sets == ((0, 1, 2, 3),) and hs.k == 1 and hs.complete
    assert hs.to_text() == "h 4 1 1\n0 1 2 3\n"
    assert export_hitting_set(Instance(cycle(4), 0, 2), 4).sets == ()
    assert not export_hitting_set(Instance(path(6), 1, 3), 5).complete


def _min_hitting_set(hs: HittingSetInstance) -> int:
    for size in range(len(hs.ground) + 1):
        if any(hs.is_hit_by(t) for t in combinations(hs.ground, size)):
            return size
    raise AssertionError("ground set always hits")


@pytest.mark.parametrize("s", [2, 3])
def test_hitting_set_equivalence(s):
    rng = random.Random(s)
    for i in range(120):
        g = random_graph(500 * s + i, 4 + int(rng.random() * 5), (0.3, 0.5, 0.7)[i % 3])
        hs = export_hitting_set(Instance(g, 0, s), 4 if s == 2 else 2 * s + 1)
        assert _min_hitting_set(hs) == len(brute_force_minimum(g, s))


def test_solution_sorted():
    assert Solution(frozenset({3, 1}), "x").sorted() == [1, 3]


def test_hitting_set_exhaustive_s2():
    # Every graph up to 8 vertices: min hitting set of the export equals OPT.
    for n in range(9):
        for g in all_graphs(n):
            hs = export_hitting_set(Instance(g, 0, 2), 4)
            best = brute_force_minimum(g, 2)
            assert hs.is_hit_by(best)
            if best:
                assert not any(hs.is_hit_by(t) for t in combinations(hs.ground, len(best) - 1))
