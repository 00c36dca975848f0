from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from broomcolor.errors import CapacityError, InputError
from broomcolor.graph import Graph
from broomcolor.oracle import (
    chromatic_number,
    clique_number,
    color_with_at_most,
    independence_number,
    omega,
    ramsey_binomial,
    ramsey_is_exact,
    ramsey_upper,
)
from conftest import complete, cycle, from_nx
from test_graph import graphs


def brute_alpha(G: Graph) -> int:
    best = 0
    for k in range(G.n + 1):
        if any(G.is_independent(G.mask(S)) for S in combinations(range(G.n), k)):
            best = k
    return best


def test_clique_examples(petersen):
    assert omega(cycle(5)) == 2
    assert omega(from_nx(nx.complete_multipartite_graph(3, 3, 3))) == 3
    k, S = clique_number(petersen)
    assert k == 2 and petersen.is_clique(petersen.mask(S))


def test_independence_examples(petersen):
    assert independence_number(complete(4))[0] == 1
    assert independence_number(cycle(5))[0] == 2
    k, S = independence_number(petersen)
    assert k == 4 == brute_alpha(petersen)
    assert petersen.is_independent(petersen.mask(S))


def test_chromatic_examples(petersen):
    assert chromatic_number(cycle(5))[0] == 3
    for n in range(1, 7):
        assert chromatic_number(complete(n))[0] == n
    chi, col = chromatic_number(petersen)
    assert chi == 3 and col.is_proper(petersen)
    assert color_with_at_most(petersen, 2) is None


def test_chromatic_ceiling(monkeypatch):
    with pytest.raises(CapacityError):
        chromatic_number(cycle(9), ceiling=8)
    monkeypatch.setenv("BROOMCOLOR_CHI_CEILING", "4")
    with pytest.raises(CapacityError):
        chromatic_number(cycle(5))


def test_ramsey_values():
    assert ramsey_upper(2, 7) == 7
    assert ramsey_upper(3, 3) == 6
    assert ramsey_upper(3, 4) <= ramsey_binomial(3, 4) == 10
    assert ramsey_upper(1, 5) == 1
    assert ramsey_upper(5, 3) == ramsey_upper(3, 5) == 14
    assert ramsey_is_exact(3, 9) and not ramsey_is_exact(3, 10)
    with pytest.raises(InputError):
        ramsey_upper(0, 3)


def test_ramsey_fallback_never_beats_binomial():
    for s in range(1, 7):
        for k in range(1, 15):
            assert ramsey_upper(s, k) <= ramsey_binomial(s, k)
            if s > 1 and k > 1:
                assert ramsey_upper(s, k) <= ramsey_upper(s - 1, k) + ramsey_upper(s, k - 1)


def test_r33_is_six_by_exhaustion():
    # every 6-vertex graph has a triangle or an independent triple; C5 has neither
    assert omega(cycle(5)) < 3 and brute_alpha(cycle(5)) < 3
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() == 6:
            G = from_nx(g)
            assert omega(G) >= 3 or independence_number(G)[0] >= 3


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=11))
def test_clique_alpha_duality_and_chi_sandwich(G):
    assert clique_number(G)[0] == independence_number(G.complement())[0]
    assert independence_number(G)[0] == brute_alpha(G)
    chi, col = chromatic_number(G)
    assert omega(G) <= chi <= max(G.n, 0)
    assert col.is_proper(G) and col.colors_used == chi
    if G.n:
        nxg = nx.Graph(G.edges())
        nxg.add_nodes_from(range(G.n))
        assert omega(G) == max(len(c) for c in nx.find_cliques(nxg))
