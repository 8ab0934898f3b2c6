import pytest
from hypothesis import given
from hypothesis import strategies as st

from atlas.graphs import Graph


def test_empty_graph():
    g = Graph()
    assert g.num_nodes() == 0
    assert g.num_edges() == 0
    assert g.nodes() == []
    assert list(g.edges()) == []


def test_add_edge_implies_nodes():
    g = Graph()
    g.add_edge("a", "b", 2.0)
    assert g.has_node("a") and g.has_node("b")
    assert g.weight("a", "b") == 2.0
    assert g.weight("b", "a") == 2.0
    assert g.neighbors("a") == {"b"}


def test_add_edge_overwrites_increment_adds():
    g = Graph()
    g.add_edge("a", "b", 1.0)
    g.add_edge("a", "b", 5.0)
    assert g.weight("a", "b") == 5.0
    g.increment_edge("a", "b", 2.0)
    assert g.weight("a", "b") == 7.0
    assert g.num_edges() == 1


def test_self_loop_degree_counts_twice():
    g = Graph()
    g.add_edge("a", "a", 3.0)
    g.add_edge("a", "b", 1.0)
    assert g.degree("a") == 3.0 * 2 + 1.0
    assert g.degree("b") == 1.0
    # self-loop weight enters the total once
    assert g.total_weight() == 4.0
    assert g.neighbors("a") == {"b"}


def test_remove_edge():
    g = Graph()
    g.add_edge("a", "b")
    g.remove_edge("a", "b")
    assert not g.has_edge("a", "b")
    assert g.has_node("a")
    with pytest.raises(KeyError):
        g.remove_edge("a", "b")


def test_edges_canonical_and_sorted():
    g = Graph()
    g.add_edge("c", "a", 1.0)
    g.add_edge("b", "a", 1.0)
    assert list(g.edges()) == [("a", "b", 1.0), ("a", "c", 1.0)]


def test_subgraph_keeps_internal_edges_only():
    g = Graph()
    g.add_edge(1, 2)
    g.add_edge(2, 3)
    g.add_edge(3, 1)
    sub = g.subgraph({1, 2})
    assert sub.nodes() == [1, 2]
    assert sub.num_edges() == 1


def test_copy_is_independent():
    g = Graph()
    g.add_edge("a", "b")
    h = g.copy()
    h.add_edge("a", "c")
    assert not g.has_node("c")
    assert g != h


@st.composite
def small_graphs(draw):
    n = draw(st.integers(min_value=1, max_value=12))
    edges = draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
        max_size=30))
    g = Graph(nodes=range(n))
    for u, v in edges:
        g.increment_edge(u, v, 1.0)
    return g


@given(small_graphs())
def test_degree_sum_is_twice_total_weight(g):
    assert sum(g.degree(u) for u in g.nodes()) == pytest.approx(
        2.0 * g.total_weight())


@given(small_graphs())
def test_edges_match_weight_lookup(g):
    for u, v, w in g.edges():
        assert g.has_edge(u, v)
        assert g.weight(u, v) == w
    assert g.num_edges() == len(list(g.edges()))
