"""Seeded instance generators.

Every family is a pure function of its GenSpec: the same spec always gives
the same labelled graph.

* ``line_graph``: L(G(n, p)).  Line graphs are claw-free, hence chair-free.
* ``cograph``: random P4-free graph on n vertices built by unions and joins.
* ``complete_multipartite``: random part sizes summing to n.
* ``rejection``: G(n, p) repaired until it has no induced t-broom (and no
  induced K_{t,t} when ``ktt`` is set).  Each retry deletes one vertex of the
  witness the detector found; when fewer than ``min_keep`` vertices survive
  a fresh G(n, p) is drawn.  This is a heuristic, bounded by ``budget``.
* ``negative_control``: a cograph on n - t - 3 vertices plus a disjoint
  induced t-broom, so the detector must succeed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import networkx as nx

from broomcolor.detect import find_induced_ktt, find_induced_tbroom
from broomcolor.errors import CapacityError, InputError
from broomcolor.graph import Graph

FAMILIES = ("line_graph", "cograph", "complete_multipartite", "rejection", "negative_control")
DEFAULT_BUDGET = 10_000


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    p: float = 0.5
    seed: int = 0
    t: int = 2
    ktt: bool = False
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.n < 0:
            raise InputError(f"n must be non-negative, got {self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise InputError(f"p must lie in [0, 1], got {self.p}")
        if self.t < 1:
            raise InputError(f"t must be >= 1, got {self.t}")

    @property
    def name(self) -> str:
        extra = f"-t{self.t}" + ("-ktt" if self.ktt else "") if self.family in ("rejection", "negative_control") else ""
        return f"{self.family}-n{self.n}-p{self.p:g}-s{self.seed}{extra}"


def _from_nx(g: nx.Graph) -> Graph:
    g = nx.convert_node_labels_to_integers(g, ordering="sorted")
    return Graph(g.number_of_nodes(), g.edges())


def gnp(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def line_graph(n: int, p: float, rng: random.Random) -> Graph:
    base = nx.Graph()
    base.add_nodes_from(range(n))
    base.add_edges_from((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p)
    return _from_nx(nx.line_graph(base))


def cograph(n: int, rng: random.Random) -> Graph:
    """Random cograph: split the vertex range and combine halves by union or join."""
    edges: list[tuple[int, int]] = []

    def build(lo: int, hi: int) -> None:
        if hi - lo <= 1:
            return
        mid = rng.randint(lo + 1, hi - 1)
        build(lo, mid)
        build(mid, hi)
        if rng.random() < 0.5:
            edges.extend((u, v) for u in range(lo, mid) for v in range(mid, hi))

    build(0, n)
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph(n, [(perm[u], perm[v]) for u, v in edges])


def complete_multipartite(n: int, rng: random.Random) -> Graph:
    part = []
    k = 0
    while len(part) < n:
        size = rng.randint(1, max(1, n - len(part)))
        part.extend([k] * size)
        k += 1
    rng.shuffle(part)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if part[u] != part[v]]
    return Graph(n, edges)


def _witness(G: Graph, t: int, ktt: bool):
    w = find_induced_tbroom(G, t)
    if w is None and ktt:
        w = find_induced_ktt(G, t)
    return w


def rejection(n: int, p: float, t: int, ktt: bool, rng: random.Random, budget: int = DEFAULT_BUDGET) -> Graph:
    if ktt and t < 2:
        raise InputError("biclique-free sampling needs t >= 2")
    min_keep = max(1, n // 2)
    G = gnp(n, p, rng)
    for _ in range(budget):
        w = _witness(G, t, ktt)
        if w is None:
            return G
        victim = rng.choice(sorted(w.vertices()))
        keep = [v for v in range(G.n) if v != victim]
        if len(keep) < min_keep:
            G = gnp(n, p, rng)
        else:
            G, _ = G.induced(keep)
    raise CapacityError(
        f"no {t}-broom-free graph found within {budget} attempts; try a smaller n or a different p"
    )


def broom_graph(t: int) -> Graph:
    """The t-broom on vertices 0..t+2: u0=0, v1=1, v2=2, S=3..t+2."""
    edges = [(0, 1), (1, 2)] + [(0, s) for s in range(3, t + 3)]
    return Graph(t + 3, edges)


def negative_control(n: int, t: int, rng: random.Random) -> Graph:
    size = t + 3
    if n < size:
        raise InputError(f"negative control needs n >= {size} for t = {t}")
    base = cograph(n - size, rng)
    broom = broom_graph(t)
    edges = list(base.edges()) + [(u + base.n, v + base.n) for u, v in broom.edges()]
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph(n, [(perm[u], perm[v]) for u, v in edges])


def generate(spec: GenSpec) -> Graph:
    rng = random.Random(spec.seed)
    if spec.family == "line_graph":
        return line_graph(spec.n, spec.p, rng)
    if spec.family == "cograph":
        return cograph(spec.n, rng)
    if spec.family == "complete_multipartite":
        return complete_multipartite(spec.n, rng)
    if spec.family == "rejection":
        return rejection(spec.n, spec.p, spec.t, spec.ktt, rng, spec.budget)
    return negative_control(spec.n, spec.t, rng)


def small_graphs(max_n: int = 7):
    """Every graph on at most ``max_n`` (<= 7) vertices up to isomorphism, no empty graph."""
    if max_n > 7:
        raise InputError("the graph atlas stops at 7 vertices")
    for g in nx.graph_atlas_g()[1:]:
        if g.number_of_nodes() > max_n:
            break
        yield _from_nx(g)
