from __future__ import annotations

import networkx as nx
import pytest

from broomcolor.graph import Graph


def from_nx(g: nx.Graph) -> Graph:
    g = nx.convert_node_labels_to_integers(g, ordering="sorted")
    return Graph(g.number_of_nodes(), g.edges())


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def chair() -> Graph:
    # u0=0, v1=1, v2=2, S={3, 4}
    return Graph(5, [(0, 1), (1, 2), (0, 3), (0, 4)])


@pytest.fixture
def c5() -> Graph:
    return cycle(5)


@pytest.fixture
def petersen() -> Graph:
    return from_nx(nx.petersen_graph())


@pytest.fixture
def octahedron() -> Graph:
    return from_nx(nx.complete_multipartite_graph(2, 2, 2))


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: dict[int, str] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
