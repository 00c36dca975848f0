from __future__ import annotations

import json

import networkx as nx
import pytest
from hypothesis import given, settings

from broomcolor.certify import NOT_IN_CLASS
from broomcolor.detect import find_induced_tbroom
from broomcolor.errors import CapacityError, InputError, ParseError
from broomcolor.graph import Graph
from broomcolor.workbench import GenSpec, emit_dimacs, generate, parse_dimacs, run_corpus
from broomcolor.workbench.cli import main
from broomcolor.workbench.corpus import COLUMNS
from broomcolor.workbench.generators import small_graphs
from conftest import cycle, from_nx
from test_graph import graphs


def test_dimacs_c5_round_trip():
    text = emit_dimacs(cycle(5))
    assert text.count("\ne ") == 5 and text.startswith("p edge 5 5\n")
    assert parse_dimacs(text) == cycle(5)


def test_dimacs_one_indexed_and_comments():
    G = parse_dimacs("c hello\np edge 3 1\ne 1 2\n")
    assert G.has_edge(0, 1) and G.m == 1


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("p edge 3 2\ne 1 2\n", "announces 2 edges but 1"),
        ("e 1 2\n", "line 1"),
        ("p edge 3 1\ne 1 4\n", "line 2"),
        ("p edge 3 2\ne 1 2\ne 2 1\n", "duplicate"),
        ("p edge 3 1\ne 2 2\n", "self-loop"),
        ("p edge 3 1\nx 1 2\n", "line 2"),
        ("p edge x 1\n", "line 1"),
        ("c nothing\n", "header"),
    ],
)
def test_dimacs_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_dimacs(text)


@settings(max_examples=40, deadline=None)
@given(graphs())
def test_dimacs_round_trip_property(G):
    text = emit_dimacs(G)
    assert parse_dimacs(text) == G
    assert emit_dimacs(parse_dimacs(text)) == text


def test_line_graph_of_k4_is_octahedron():
    L = from_nx(nx.line_graph(nx.complete_graph(4)))
    assert L.n == 6 and nx.is_isomorphic(nx.Graph(L.edges()), nx.complete_multipartite_graph(2, 2, 2))
    assert find_induced_tbroom(L, 2) is None


def test_generator_classes():
    for seed in range(20):
        assert find_induced_tbroom(generate(GenSpec("cograph", 10, seed=seed)), 1) is None
        assert find_induced_tbroom(generate(GenSpec("line_graph", 8, seed=seed)), 2) is None
        assert find_induced_tbroom(generate(GenSpec("complete_multipartite", 9, seed=seed)), 1) is None
        assert find_induced_tbroom(generate(GenSpec("negative_control", 12, seed=seed, t=2)), 2) is not None
        G = generate(GenSpec("rejection", 14, seed=seed, t=2))
        assert find_induced_tbroom(G, 2) is None


def test_generators_are_deterministic():
    for fam in ("cograph", "line_graph", "rejection", "negative_control", "complete_multipartite"):
        spec = GenSpec(fam, 12, seed=99, t=3)
        assert generate(spec) == generate(spec)


def test_generator_errors():
    with pytest.raises(InputError):
        GenSpec("tree", 5)
    with pytest.raises(InputError):
        generate(GenSpec("negative_control", 3, t=2))
    with pytest.raises(CapacityError, match="smaller n"):
        generate(GenSpec("rejection", 30, p=0.9, t=1, budget=3))


def test_corpus_cographs():
    specs = [GenSpec("cograph", 5 + s % 16, seed=s) for s in range(100)]
    report = run_corpus(specs, mode="chair", t=2)
    assert len(report) == 100 and report.ok
    assert all(r.accepted and r.verdict == "Colored" for r in report.rows)
    assert report.violations == 0


def test_corpus_five_vertex_graphs():
    five = [G for G in small_graphs(5) if G.n == 5]
    assert len(five) == 34
    free = [(f"g{i}", G) for i, G in enumerate(five) if find_induced_tbroom(G, 2) is None]
    comp = [(f"c{i}", G.complement()) for i, G in enumerate(five) if find_induced_tbroom(G.complement(), 2)]
    rep = run_corpus(free, mode="chair", t=2)
    assert rep.ok and all(r.verdict == "Colored" for r in rep.rows)
    rep = run_corpus(comp, mode="chair", t=2)
    assert rep.ok and all(r.verdict == NOT_IN_CLASS for r in rep.rows)


def test_empty_corpus():
    rep = run_corpus([], mode="chair")
    assert len(rep) == 0 and rep.ok
    assert rep.to_csv() == ",".join(COLUMNS) + "\n"


def test_corpus_parallel_matches_serial():
    specs = [GenSpec("line_graph", 7, seed=s) for s in range(6)]
    assert run_corpus(specs, "chair", workers=2).to_csv() == run_corpus(specs, "chair").to_csv()


def test_cli_round_trip(tmp_path, capsys):
    g = tmp_path / "g.col"
    assert main(["gen", "line_graph", "--n", "8", "--seed", "4", "-o", str(g)]) == 0
    cert = tmp_path / "c.json"
    assert main(["color", "--t", "2", "--mode", "chair", str(g), "--cert", str(cert)]) == 0
    first = cert.read_text()
    assert main(["color", "--t", "2", "--mode", "chair", str(g), "--cert", str(cert)]) == 0
    assert cert.read_text() == first
    assert main(["verify", str(g), str(cert)]) == 0
    data = json.loads(first)
    data["bound"] = 0
    cert.write_text(json.dumps(data))
    assert main(["verify", str(g), str(cert)]) == 1
    for q in ("chi", "omega", "alpha"):
        assert main(["oracle", q, str(g)]) == 0
    assert main(["decompose", "--t", "2", "--mode", "chair", str(g)]) == 0
    assert main(["check-free", "--t", "2", str(g)]) == 0
    capsys.readouterr()


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.col"
    bad.write_text("p edge 3 2\ne 1 2\n")
    assert main(["color", str(bad)]) == 2
    neg = tmp_path / "neg.col"
    assert main(["gen", "negative_control", "--n", "12", "--seed", "1", "-o", str(neg)]) == 0
    assert main(["color", str(neg)]) == 1
    assert main(["check-free", "--t", "2", str(neg)]) == 1
    assert main(["color", str(tmp_path / "missing.col")]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["gen", "cograph", "--n", "5"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_cli_corpus_report_is_deterministic(tmp_path, capsys):
    d = tmp_path / "corpus"
    d.mkdir()
    for s in range(4):
        main(["gen", "cograph", "--n", "12", "--seed", str(s), "-o", str(d / f"g{s}.col")])
    main(["gen", "negative_control", "--n", "12", "--seed", "0", "-o", str(d / "neg.col")])
    r1, r2 = tmp_path / "r1.csv", tmp_path / "r2.csv"
    assert main(["corpus", str(d), "--mode", "chair", "--report", str(r1)]) == 0
    assert main(["corpus", str(d), "--mode", "chair", "--report", str(r2)]) == 0
    assert r1.read_bytes() == r2.read_bytes()
    lines = r1.read_text().splitlines()
    assert lines[0] == ",".join(COLUMNS) and len(lines) == 6
    capsys.readouterr()
