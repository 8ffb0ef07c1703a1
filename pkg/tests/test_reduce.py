"""Strong and weak reductions: firing conditions, safety, fixpoint traces."""

import pytest
from hypothesis import given, settings, strategies as st

from mist import Graph, reduce_to_fixpoint
from mist.exact import opt_spanning_tree
from mist.reduce import (
    RULESETS,
    StrongReduction,
    WeakReduction,
    apply_strong_reduction,
    apply_weak_reduction,
    find_op1,
    find_op2,
    find_op3,
    find_op4,
    find_op8,
    find_op9,
    find_op10,
    find_op11,
    lift_strong,
)

from graphgen import connected_graphs_up_to_iso
from helpers import build_graph, random_connected

import random


def cycle(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def alive_edges(g):
    return (g.n_alive(), sorted(g.edge_list()))


# ---------------------------------------------------------------- strong ops


def test_op1_drops_larger_pendant_twin():
    g = build_graph(4, [(0, 1), (0, 2), (0, 3)])
    r = find_op1(g)
    assert r is not None and r.kind == "op1"
    assert r.removed_vertices == (2,)
    h = apply_strong_reduction(g, r)
    assert alive_edges(h) == (3, [(0, 1), (0, 3)])
    assert opt_spanning_tree(h).weight == opt_spanning_tree(g).weight == 1


def test_op1_skips_tiny_graphs():
    # both leaves of a 2-path are pendant twins, but n must exceed 3
    assert find_op1(path(3)) is None


def test_op2_removes_redundant_cycle_edge():
    # 4-cycle with a pendant on each endpoint of the edge (0, 1): deleting
    # either endpoint strands the opposite pendant from the other endpoint
    g = build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 5)])
    r = find_op2(g)
    assert r is not None and r.kind == "op2"
    assert r.removed_edges == ((0, 1),)
    assert r.removed_vertices == ()
    h = apply_strong_reduction(g, r)
    assert opt_spanning_tree(h).weight == opt_spanning_tree(g).weight == 4


def test_op2_needs_the_separation_both_ways():
    # plain cycles keep everything connected after one vertex goes
    assert find_op2(cycle(5)) is None


def test_op8_removes_one_support_edge_of_a_twin_pair():
    g = build_graph(5, [(0, 2), (1, 2), (1, 3), (0, 3), (1, 4)])
    assert find_op1(g) is None and find_op2(g) is None
    r = find_op8(g)
    assert r is not None and r.kind == "op8"
    assert r.removed_edges == ((1, 2),)
    assert r.witness == (0, 1, 2, 3)
    h = apply_strong_reduction(g, r)
    assert alive_edges(h) == (5, [(0, 2), (0, 3), (1, 3), (1, 4)])
    assert opt_spanning_tree(h).weight == opt_spanning_tree(g).weight == 3


def test_op9_trims_an_edge_when_three_twins_share_supports():
    # three twins 2, 3, 4 over {0, 1}; the extra vertex 5 blocks the
    # pairwise rule so the three-twin rule gets its turn
    g = build_graph(
        6, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (0, 5), (1, 5)]
    )
    assert find_op8(g) is None
    r = find_op9(g)
    assert r is not None and r.kind == "op9"
    assert r.removed_edges == ((0, 2),)
    h = apply_strong_reduction(g, r)
    assert opt_spanning_tree(h).weight == opt_spanning_tree(g).weight == 3


def test_op10_straightens_a_small_separated_block():
    # vertices 2, 3 sit between 0 and 1; a spanning path 0-2-3-1 exists,
    # so the chord (0, 3) inside the block goes away and a 6-cycle remains
    g = build_graph(6, [(0, 2), (2, 3), (3, 1), (0, 3), (1, 4), (4, 5), (5, 0)])
    for fn in (find_op1, find_op2, find_op8, find_op9):
        assert fn(g) is None
    r = find_op10(g)
    assert r is not None and r.kind == "op10"
    assert r.removed_edges == ((0, 3),)
    assert r.witness == (0, 1, (2, 3))
    h = apply_strong_reduction(g, r)
    assert alive_edges(h) == (6, [(0, 2), (0, 5), (1, 3), (1, 4), (2, 3), (4, 5)])
    assert opt_spanning_tree(h).weight == opt_spanning_tree(g).weight == 4


def test_lift_strong_restores_removed_vertices():
    g = build_graph(4, [(0, 1), (0, 2), (0, 3)])
    r = find_op1(g)
    h = apply_strong_reduction(g, r)
    t = opt_spanning_tree(h)
    lifted = lift_strong(r, t)
    assert lifted.weight == opt_spanning_tree(g).weight
    endpoints = [v for e in lifted.edges for v in e]
    assert endpoints.count(2) == 1  # the dropped twin reattaches as a leaf


# ------------------------------------------------------------------ weak ops


def test_op3_splits_at_a_bridge_between_side_cutpoints():
    # triangle plus pendant on each side; the bridge endpoints 2 and 4
    # each separate their own side, so the split loses nothing (c = 0)
    g = build_graph(
        8,
        [(0, 1), (1, 2), (0, 2), (2, 3), (2, 4), (4, 5), (5, 6), (4, 6), (4, 7)],
    )
    r = find_op3(g)
    assert r is not None and r.kind == "op3"
    assert r.bridge == (2, 4)
    assert r.sides == ((0, 1, 2, 3), (4, 5, 6, 7))
    assert r.c == 0
    parts = apply_weak_reduction(g, r)
    assert [alive_edges(p) for p in parts] == [
        (4, [(0, 1), (0, 2), (1, 2), (2, 3)]),
        (4, [(4, 5), (4, 6), (4, 7), (5, 6)]),
    ]
    total = sum(opt_spanning_tree(p).weight for p in parts) + r.c
    assert total == opt_spanning_tree(g).weight == 4


def test_op3_ignores_bridges_without_the_cutpoint_condition():
    # two bare triangles joined by a bridge: a triangle has no cutpoint,
    # so neither endpoint separates its side and the rule stays quiet
    g = build_graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])
    assert find_op3(g) is None


def test_op4_replaces_a_hanging_component_with_a_pendant():
    # cutpoint 2 hangs the triangle rump {0, 1}; the inner instance is the
    # triangle plus a fresh pendant, worth 2, so the carried constant is 1
    g = build_graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])
    assert find_op3(g) is None
    r = find_op4(g)
    assert r is not None and r.kind == "op4"
    assert r.cut_vertex == 2
    assert r.component == (0, 1)
    assert r.c == 1
    assert r.inner_opt == 2
    parts = apply_weak_reduction(g, r)
    assert len(parts) == 1
    assert alive_edges(parts[0]) == (4, [(2, 3), (2, 5), (3, 4)])
    total = opt_spanning_tree(parts[0]).weight + r.c
    assert total == opt_spanning_tree(g).weight == 3


def test_op11_contracts_a_degree_two_edge():
    g = cycle(6)
    r = find_op11(g)
    assert r is not None and r.kind == "op11"
    assert r.merged == (0, 1)
    assert r.c == 1
    parts = apply_weak_reduction(g, r)
    assert len(parts) == 1
    assert alive_edges(parts[0]) == (5, [(0, 2), (0, 5), (2, 3), (3, 4), (4, 5)])
    total = opt_spanning_tree(parts[0]).weight + r.c
    assert total == opt_spanning_tree(g).weight == 4


def test_op11_needs_both_endpoints_at_degree_two():
    # the middle edge of a 4-path qualifies; no star edge ever does
    r = find_op11(path(4))
    assert r is not None and r.merged == (1, 2)
    assert find_op11(build_graph(4, [(0, 1), (0, 2), (0, 3)])) is None


# ---------------------------------------------------------------- fixpoints


def test_fixpoint_leaves_small_paths_alone():
    for mode in ("simple", "refined"):
        tr = reduce_to_fixpoint(path(3), mode)
        assert [n.applied for n in tr.nodes] == [None]
        assert alive_edges(tr.nodes[0].graph) == (3, [(0, 1), (1, 2)])


def test_fixpoint_triangle_depends_on_mode():
    tr = reduce_to_fixpoint(cycle(3), "simple")
    assert [n.applied for n in tr.nodes] == [None]

    tr = reduce_to_fixpoint(cycle(3), "refined")
    kinds = [n.applied.kind for n in tr.nodes if n.applied is not None]
    assert kinds == ["op11"]
    assert tr.weak_constant_total() == 1
    leaf = tr.nodes[tr.leaves()[0]].graph
    assert alive_edges(leaf) == (2, [(0, 2)])


def test_fixpoint_triple_twin_instance_uses_op9():
    g = build_graph(
        9,
        [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4),
         (0, 5), (1, 5), (5, 6), (6, 7), (7, 8)],
    )
    tr = reduce_to_fixpoint(g, "refined")
    kinds = [n.applied.kind for n in tr.nodes if n.applied is not None]
    assert kinds[0] == "op9"
    assert "op9" in kinds
    leaf_trees = {i: opt_spanning_tree(tr.nodes[i].graph) for i in tr.leaves()}
    assert tr.lift_all(leaf_trees).weight == opt_spanning_tree(g).weight == 6


def test_fixpoint_respects_mode_rulesets():
    strong_simple, weak_simple = RULESETS["simple"]
    g = build_graph(
        9,
        [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4),
         (0, 5), (1, 5), (5, 6), (6, 7), (7, 8)],
    )
    tr = reduce_to_fixpoint(g, "simple")
    for node in tr.nodes:
        if node.applied is not None:
            assert node.applied.kind in strong_simple + weak_simple


def walk_trace_checking_safety(g, mode):
    """Every strong step keeps opt; every weak step satisfies the
    constant-sum identity; the vertex+edge measure strictly drops."""
    tr = reduce_to_fixpoint(g, mode)
    for node in tr.nodes:
        red = node.applied
        if red is None:
            continue
        parent = node.graph
        kids = [tr.nodes[c].graph for c in node.children]
        parent_opt = opt_spanning_tree(parent).weight
        if isinstance(red, StrongReduction):
            assert len(kids) == 1
            assert opt_spanning_tree(kids[0]).weight == parent_opt
        else:
            assert isinstance(red, WeakReduction)
            total = sum(opt_spanning_tree(k).weight for k in kids) + red.c
            assert total == parent_opt
        parent_measure = parent.n_alive() + parent.edge_count()
        kid_measure = sum(k.n_alive() + k.edge_count() for k in kids)
        assert kid_measure < parent_measure
    leaf_trees = {i: opt_spanning_tree(tr.nodes[i].graph) for i in tr.leaves()}
    lifted = tr.lift_all(leaf_trees)
    assert lifted.weight == opt_spanning_tree(g).weight
    return tr


def test_safety_exhaustive_small_graphs():
    fired = set()
    for g in connected_graphs_up_to_iso(6):
        if g.n_alive() < 2:
            continue
        for mode in ("simple", "refined"):
            tr = walk_trace_checking_safety(g, mode)
            fired.update(
                n.applied.kind for n in tr.nodes if n.applied is not None
            )
    # every rule except the bridge split shows up by n = 6
    assert {"op1", "op2", "op4", "op8", "op9", "op10", "op11"} <= fired


@given(st.integers(0, 999))
@settings(max_examples=40, deadline=None)
def test_safety_random_instances(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 9)
    g = random_connected(n, 0.35, rng)
    for mode in ("simple", "refined"):
        walk_trace_checking_safety(g, mode)


def test_fixpoint_rejects_unknown_mode():
    from mist.errors import BadParams

    with pytest.raises(BadParams):
        reduce_to_fixpoint(path(3), "fancy")
