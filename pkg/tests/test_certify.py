from __future__ import annotations

import pytest

from broomcolor.certify import (
    COLORED,
    CertifiedResult,
    emit_cert,
    graph_hash,
    parse_cert,
    verify,
)
from broomcolor.colorer import color_chair_free, color_tbroom_free
from broomcolor.detect import BroomWitness
from broomcolor.errors import InputError, ParseError
from broomcolor.graph import Coloring, Graph
from broomcolor.workbench.generators import GenSpec, generate
from conftest import cycle


def test_hash_binds_labelled_graph():
    assert graph_hash(cycle(5)) == graph_hash(Graph(5, [(4, 0), (1, 0), (2, 1), (3, 2), (4, 3)]))
    assert graph_hash(cycle(5)) != graph_hash(Graph(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]))


def test_pipeline_output_is_accepted(octahedron, petersen):
    for G in (cycle(5), octahedron, petersen):
        res = color_chair_free(G)
        rep = verify(G, res)
        assert rep.accepted, rep.failures
        again = parse_cert(emit_cert(res, G.n))
        assert verify(G, again).checks == rep.checks


def test_tampered_colour_names_edge():
    G = cycle(5)
    res = color_chair_free(G)
    a = dict(res.coloring.assignment)
    a[1] = a[0]
    res.coloring = Coloring(a)
    rep = verify(G, res)
    assert not rep.accepted and not rep.checks["proper"]
    assert any("(0, 1)" in f for f in rep.failures)


def test_lowered_bound_rejected():
    G = cycle(5)
    res = color_chair_free(G)
    res.bound = res.colors_used - 1
    rep = verify(G, res)
    assert not rep.accepted and not rep.checks["bound"] and not rep.checks["within_bound"]


def test_corrupted_witness_rejected(petersen):
    res = color_chair_free(petersen)
    w = res.witness
    res.witness = BroomWitness(w.u0, w.v1, w.S[0], (w.v2, *w.S[1:]))
    rep = verify(petersen, res)
    assert not rep.accepted and not rep.checks["witness"]


def test_wrong_graph_is_input_error():
    res = color_chair_free(cycle(5))
    with pytest.raises(InputError):
        verify(cycle(6), res)


def test_sharing_claims_are_rechecked():
    G = generate(GenSpec("line_graph", 9, p=0.5, seed=2))
    res = color_chair_free(G)
    res.trace["root"].setdefault("sharing", []).append({"reason": "bogus", "groups": [[0], list(G.neighbors(0))]})
    rep = verify(G, res)
    assert not rep.accepted and not rep.checks["sharing"]


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_cert("{not json")
    with pytest.raises(ParseError):
        parse_cert("[]")
    with pytest.raises(ParseError):
        parse_cert('{"version": 99}')


def test_colored_requires_colouring():
    G = cycle(5)
    bare = CertifiedResult(COLORED, 2, "chair", 2, 30, graph_hash(G))
    assert not verify(G, bare).accepted


def test_general_mode_certificates_round_trip():
    for seed in range(5):
        G = generate(GenSpec("rejection", 18, p=0.5, seed=seed, t=3))
        res = color_tbroom_free(G, 3, "general")
        text = emit_cert(res, G.n)
        assert emit_cert(parse_cert(text), G.n) == text
        assert verify(G, parse_cert(text)).accepted
