from __future__ import annotations

from itertools import combinations, permutations

import networkx as nx
import pytest
from hypothesis import given, settings

from broomcolor.detect import (
    BicliqueWitness,
    BroomWitness,
    find_independent_in,
    find_induced_ktt,
    find_induced_tbroom,
    verify_broom,
    verify_ktt,
    witness_from_json,
)
from broomcolor.errors import InputError
from broomcolor.graph import Graph
from conftest import chair, complete, cycle, from_nx
from test_graph import graphs


def has_broom_brute(G: Graph, t: int) -> bool:
    """Try every ordered placement of u0, v1, v2 and every t-set S."""
    for u0, v1, v2 in permutations(range(G.n), 3):
        rest = [v for v in range(G.n) if v not in (u0, v1, v2)]
        for S in combinations(rest, t):
            if verify_broom(G, BroomWitness(u0, v1, v2, S)):
                return True
    return False


def test_chair_finds_itself():
    w = find_induced_tbroom(chair(), 2)
    assert w == BroomWitness(0, 1, 2, (3, 4))
    assert verify_broom(chair(), w)


def test_c5_and_petersen(c5, petersen):
    assert find_induced_tbroom(c5, 2) is None
    w = find_induced_tbroom(petersen, 2)
    assert w is not None and verify_broom(petersen, w, 2)
    assert has_broom_brute(petersen, 2)


def test_broom_input_errors():
    with pytest.raises(InputError):
        find_induced_tbroom(cycle(5), 0)
    with pytest.raises(InputError):
        find_induced_ktt(cycle(5), 1)


def test_one_broom_is_p4():
    p4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert verify_broom(p4, find_induced_tbroom(p4, 1))
    assert find_induced_tbroom(complete(4), 1) is None


def test_verify_broom_rejects_swapped_vertex():
    G = chair()
    assert verify_broom(G, BroomWitness(0, 1, 2, (3, 4)))
    assert not verify_broom(G, BroomWitness(0, 1, 3, (2, 4)))
    assert not verify_broom(G, BroomWitness(0, 1, 2, (3, 4)), t=3)
    assert not verify_broom(G, BroomWitness(0, 1, 2, (3, 9)))


def test_ktt_examples(c5):
    k33 = from_nx(nx.complete_bipartite_graph(3, 3))
    w = find_induced_ktt(k33, 3)
    assert w == BicliqueWitness((0, 1, 2), (3, 4, 5))
    assert verify_ktt(k33, w, 3)
    assert find_induced_ktt(c5, 2) is None
    cube = from_nx(nx.hypercube_graph(3))
    w = find_induced_ktt(cube, 2)
    assert w is not None and verify_ktt(cube, w, 2)


def test_independent_examples(petersen):
    assert find_independent_in(cycle(5), range(5), 2) == frozenset({0, 2})
    assert find_independent_in(complete(4), range(4), 2) is None
    S = find_independent_in(petersen, range(10), 4)
    assert len(S) == 4 and petersen.is_independent(petersen.mask(S))
    assert find_independent_in(petersen, range(10), 5) is None


def test_witness_json_round_trip():
    for w in (BroomWitness(4, 1, 2, (9, 3)), BicliqueWitness((5, 1), (2, 0))):
        assert witness_from_json(w.to_json()) == w
    with pytest.raises(InputError):
        witness_from_json({"kind": "star"})


def test_class_inclusion_for_claw_free_and_cographs():
    # line graphs are claw-free, cographs are P4-free: both exclude the chair
    for seed in range(10):
        base = nx.gnp_random_graph(9, 0.4, seed=seed)
        assert find_induced_tbroom(from_nx(nx.line_graph(base)), 2) is None


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=8))
def test_detector_matches_brute_force(G):
    for t in (1, 2, 3):
        w = find_induced_tbroom(G, t)
        assert (w is not None) == has_broom_brute(G, t)
        if w is not None:
            assert verify_broom(G, w, t)
    w = find_induced_ktt(G, 2)
    brute = any(
        verify_ktt(G, BicliqueWitness(L, R))
        for L in combinations(range(G.n), 2)
        for R in combinations([v for v in range(G.n) if v not in L], 2)
    )
    assert (w is not None) == brute
