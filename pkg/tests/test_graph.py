"""Graph container, bridges, cut-points, induced subgraphs."""

import pytest
from hypothesis import given, strategies as st

from mist import Graph, norm_edge
from mist.errors import InternalInvariant
from mist.graph import (
    connected_components,
    component_of,
    find_bridges,
    find_cutpoints,
    induced_subgraph,
)

from helpers import build_graph, naive_bridges, naive_cutpoints


def test_norm_edge_orders_endpoints():
    assert norm_edge(3, 1) == (1, 3)
    assert norm_edge(1, 3) == (1, 3)


def test_adjacency_stays_sorted():
    g = Graph(4)
    g.add_edge(0, 3)
    g.add_edge(0, 1)
    g.add_edge(0, 2)
    assert g.neighbors(0) == [1, 2, 3]
    assert g.degree(0) == 3


def test_edge_list_is_sorted_and_counted():
    g = build_graph(4, [(2, 3), (0, 1), (1, 2)])
    assert g.edge_list() == [(0, 1), (1, 2), (2, 3)]
    assert g.edge_count() == 3


def test_duplicate_edge_rejected():
    g = build_graph(3, [(0, 1)])
    with pytest.raises(InternalInvariant):
        g.add_edge(1, 0)


def test_self_loop_rejected():
    g = Graph(3)
    with pytest.raises(InternalInvariant):
        g.add_edge(1, 1)


def test_remove_vertex_keeps_ids_stable():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    g.remove_vertex(1)
    assert g.alive_list() == [0, 2, 3]
    assert not g.is_alive(1)
    assert g.edge_list() == [(2, 3)]
    assert g.n_alive() == 3
    v = g.add_vertex()
    assert v == 4


def test_remove_and_add_edge_roundtrip():
    g = build_graph(3, [(0, 1), (1, 2)])
    g.remove_edge(0, 1)
    assert not g.has_edge(0, 1)
    g.add_edge(0, 1)
    assert g.has_edge(1, 0)


def test_copy_is_independent():
    g = build_graph(3, [(0, 1), (1, 2)])
    h = g.copy()
    h.remove_edge(0, 1)
    assert g.has_edge(0, 1)
    assert g != h


def test_connectivity_and_components():
    g = build_graph(5, [(0, 1), (2, 3), (3, 4)])
    assert not g.is_connected()
    assert connected_components(g) == [[0, 1], [2, 3, 4]]
    assert component_of(g, 3) == [2, 3, 4]
    assert component_of(g, 3, blocked=frozenset({2})) == [3, 4]
    g.add_edge(1, 2)
    assert g.is_connected()


# bridges: path 1-2-3 has both edges, a triangle has none, two triangles
# joined by one edge have exactly that edge


def test_bridges_path():
    g = build_graph(3, [(0, 1), (1, 2)])
    assert find_bridges(g) == {(0, 1), (1, 2)}


def test_bridges_triangle():
    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert find_bridges(g) == set()


def test_bridges_two_triangles_joined():
    g = build_graph(
        6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]
    )
    assert find_bridges(g) == {(2, 3)}


def test_cutpoints_cycle():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert find_cutpoints(g) == []


def test_cutpoints_path():
    g = build_graph(3, [(0, 1), (1, 2)])
    assert find_cutpoints(g) == [1]


def test_cutpoints_two_triangles_sharing_a_vertex():
    g = build_graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    assert find_cutpoints(g) == [2]


def test_induced_k4_triangle():
    g = build_graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    sub, old_ids = induced_subgraph(g, {0, 1, 2})
    assert old_ids == [0, 1, 2]
    assert sub.edge_list() == [(0, 1), (0, 2), (1, 2)]


def test_induced_empty_selection():
    g = build_graph(3, [(0, 1), (1, 2)])
    sub, old_ids = induced_subgraph(g, set())
    assert old_ids == []
    assert sub.n_alive() == 0


def test_induced_c5_one_edge_plus_isolated():
    g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    sub, old_ids = induced_subgraph(g, {0, 1, 3})
    assert old_ids == [0, 1, 3]
    assert sub.edge_list() == [(0, 1)]
    assert sub.degree(2) == 0


@st.composite
def small_graphs(draw):
    n = draw(st.integers(min_value=1, max_value=10))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=20)) if pairs else []
    return n, edges


@given(small_graphs())
def test_bridges_match_removal_oracle(data):
    n, edges = data
    assert find_bridges(build_graph(n, edges)) == naive_bridges(n, edges)


@given(small_graphs())
def test_cutpoints_match_removal_oracle(data):
    n, edges = data
    assert find_cutpoints(build_graph(n, edges)) == naive_cutpoints(n, edges)


@given(small_graphs())
def test_induced_subgraph_unmaps_to_original_edges(data):
    n, edges = data
    g = build_graph(n, edges)
    s = set(range(0, n, 2))
    sub, old_ids = induced_subgraph(g, s)
    unmapped = {norm_edge(old_ids[u], old_ids[v]) for u, v in sub.edge_list()}
    expected = {norm_edge(u, v) for u, v in edges if u in s and v in s}
    assert unmapped == expected
