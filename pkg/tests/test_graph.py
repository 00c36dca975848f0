from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from broomcolor.errors import InputError, InternalContradiction
from broomcolor.graph import (
    Coloring,
    Graph,
    back_degree,
    components,
    degeneracy_order,
    distance_layers,
    greedy_color,
    induced_subgraph,
)
from conftest import chair, complete, cycle, from_nx


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, chosen) if keep])


def test_rejects_self_loops_and_bad_ids():
    with pytest.raises(InputError):
        Graph(3, [(1, 1)])
    with pytest.raises(InputError):
        Graph(3, [(0, 3)])
    with pytest.raises(InputError):
        Graph(-1, [])


def test_edges_canonical_and_counts(c5):
    assert c5.edges() == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
    assert c5.m == 5
    assert c5.degree(0) == 2
    assert Graph(3, [(1, 0), (0, 1)]).m == 1


def test_induced_c5_to_p4():
    H, ids = induced_subgraph(cycle(5), [0, 1, 2, 3])
    assert ids == (0, 1, 2, 3)
    assert H.edges() == [(0, 1), (1, 2), (2, 3)]


def test_induced_k5_is_k3():
    H, _ = induced_subgraph(complete(5), [0, 2, 4])
    assert H == complete(3)


def test_chair_minus_v2_is_claw():
    H, ids = induced_subgraph(chair(), [0, 3, 4, 1])
    assert sorted(H.degree(v) for v in range(4)) == [1, 1, 1, 3]
    assert ids == (0, 1, 3, 4)


def test_induced_invalid_id():
    with pytest.raises(InputError):
        induced_subgraph(cycle(5), [0, 7])


def test_components_examples():
    assert components(cycle(5), []) == []
    two = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert [len(c) for c in components(two)] == [3, 3]
    assert components(cycle(5), [0, 2]) == [frozenset({0}), frozenset({2})]


def test_distance_layers_examples():
    L = distance_layers(cycle(5), [0])
    assert L.layers == (frozenset({1, 4}), frozenset({2, 3}))
    assert L.residue == frozenset()
    assert distance_layers(complete(4), [2]).layers == (frozenset({0, 1, 3}),)
    two = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    L = distance_layers(two, [0, 1, 2])
    assert L.layers == ()
    assert L.residue == frozenset({3, 4, 5})
    with pytest.raises(InputError):
        distance_layers(cycle(5), [])


def test_degeneracy_examples():
    tree = from_nx(nx.balanced_tree(2, 3))
    assert degeneracy_order(tree)[1] == 1
    assert degeneracy_order(complete(4))[1] == 3
    assert degeneracy_order(cycle(5))[1] == 2


def test_greedy_examples():
    col = greedy_color(complete(3), [2, 0, 1], [1, 2, 3])
    assert set(col.assignment.values()) == {1, 2, 3}
    order, d = degeneracy_order(cycle(5))
    col = greedy_color(cycle(5), order[::-1], [1, 2, 3])
    assert col.is_proper(cycle(5)) and col.colors_used <= 3
    empty = Graph(10, [])
    assert set(greedy_color(empty, range(10), [1, 2]).assignment.values()) == {1}


def test_greedy_palette_exhausted_names_vertex():
    with pytest.raises(InternalContradiction) as exc:
        greedy_color(complete(3), [0, 1, 2], [0, 1])
    assert exc.value.vertex == 2


def test_coloring_canonical_and_monochromatic():
    col = Coloring({0: 7, 1: 3, 2: 7})
    assert col.canonical().assignment == {0: 0, 1: 1, 2: 0}
    assert col.monochromatic_edge(Graph(3, [(0, 2)])) == (0, 2)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_degenerate_greedy_uses_at_most_d_plus_one(G):
    order, d = degeneracy_order(G)
    assert sorted(order) == list(range(G.n))
    assert back_degree(G, order[::-1]) <= d
    col = greedy_color(G, order[::-1])
    assert col.is_proper(G)
    assert col.colors_used <= d + 1


@settings(max_examples=40, deadline=None)
@given(graphs())
def test_complement_involution_and_components(G):
    assert G.complement().complement() == G
    comps = components(G)
    assert sum(len(c) for c in comps) == G.n
    for i, a in enumerate(comps):
        for b in comps[i + 1:]:
            assert G.anticomplete(G.mask(a), G.mask(b))
