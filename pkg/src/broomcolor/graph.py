"""Immutable simple graphs over dense vertex ids with bitmask adjacency rows.

Vertex sets are passed around as ``frozenset[int]`` in the public API and as
Python ``int`` bitmasks in the hot loops (bit ``v`` set means vertex ``v`` is a
member).  The helpers at the top of the module convert between the two.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from broomcolor.errors import InputError, InternalContradiction

VertexSet = frozenset


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> list[int]:
    return list(iter_bits(mask))


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def to_set(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighbourhood of ``v`` as a bitmask.  Instances are
    immutable; every operation returns new objects.
    """

    __slots__ = ("n", "adj", "labels", "_full")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Sequence[str] | None = None,
    ):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        self._init(n, tuple(rows), labels)

    def _init(self, n, adj, labels):
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise InputError(f"{len(labels)} labels for {n} vertices")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_full", (1 << n) - 1)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_adjacency(cls, adj: Sequence[int], labels=None) -> "Graph":
        n = len(adj)
        adj = tuple(adj)
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row >> v & 1:
                raise InputError(f"self-loop at vertex {v}")
            if row & ~full:
                raise InputError(f"row {v} references vertices outside 0..{n - 1}")
            for u in iter_bits(row):
                if not adj[u] >> v & 1:
                    raise InputError(f"asymmetric adjacency between {v} and {u}")
        g = cls.__new__(cls)
        g._init(n, adj, labels)
        return g

    # -- basic queries -------------------------------------------------
    @property
    def full_mask(self) -> int:
        return self._full

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return to_set(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adj), default=0)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, row in enumerate(self.adj):
            for v in iter_bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def mask(self, vertices: Iterable[int] | int) -> int:
        """Bitmask of ``vertices``; raises InputError on an invalid id."""
        if isinstance(vertices, int):
            if vertices & ~self._full or vertices < 0:
                raise InputError("vertex mask references ids outside the graph")
            return vertices
        out = 0
        for v in vertices:
            if not isinstance(v, int) or not 0 <= v < self.n:
                raise InputError(f"invalid vertex id {v!r} for graph with n={self.n}")
            out |= 1 << v
        return out

    def neighborhood_mask(self, mask: int) -> int:
        """N(S) as a mask: vertices outside S adjacent to some member of S."""
        out = 0
        for v in iter_bits(mask):
            out |= self.adj[v]
        return out & ~mask

    def common_neighbors(self, mask: int) -> int:
        out = self._full
        for v in iter_bits(mask):
            out &= self.adj[v]
        return out & ~mask

    def is_independent(self, mask: int) -> bool:
        return all(not (self.adj[v] & mask) for v in iter_bits(mask))

    def is_clique(self, mask: int) -> bool:
        return all((self.adj[v] | 1 << v) & mask == mask for v in iter_bits(mask))

    def complete_to(self, v: int, mask: int) -> bool:
        return self.adj[v] & mask == mask

    def anticomplete(self, left: int, right: int) -> bool:
        """True when no edge joins the two vertex masks."""
        return not (self.neighborhood_mask(left) & right) if left else True

    def complement(self) -> "Graph":
        full = self._full
        return Graph.from_adjacency(
            [full & ~row & ~(1 << v) for v, row in enumerate(self.adj)], self.labels
        )

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def induced(self, vertices: Iterable[int] | int) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph plus ``ids`` mapping new vertex i to old ``ids[i]``."""
        ids = tuple(iter_bits(self.mask(vertices)))
        pos = {old: new for new, old in enumerate(ids)}
        rows = []
        for old in ids:
            row = 0
            for u in iter_bits(self.adj[old]):
                j = pos.get(u)
                if j is not None:
                    row |= 1 << j
            rows.append(row)
        labels = None if self.labels is None else [self.labels[i] for i in ids]
        g = Graph.__new__(Graph)
        g._init(len(ids), tuple(rows), labels)
        return g, ids

    # -- dunder --------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __len__(self):
        return self.n


def induced_subgraph(G: Graph, S: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    return G.induced(S)


def _components_mask(G: Graph, mask: int) -> list[int]:
    comps = []
    rest = mask
    while rest:
        frontier = rest & -rest
        comp = 0
        while frontier:
            comp |= frontier
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= G.adj[v]
            frontier = nxt & mask & ~comp
        comps.append(comp)
        rest &= ~comp
    return comps


def components(G: Graph, S: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Connected pieces of G[S], ordered by minimum vertex id."""
    mask = G.full_mask if S is None else G.mask(S)
    return [to_set(c) for c in _components_mask(G, mask)]


@dataclass(frozen=True)
class LayerDecomposition:
    source: frozenset[int]
    layers: tuple[frozenset[int], ...]
    residue: frozenset[int]

    def beyond(self, i: int) -> frozenset[int]:
        """Union of layers at distance >= i (i >= 1)."""
        out: set[int] = set()
        for layer in self.layers[i - 1:]:
            out |= layer
        return frozenset(out)


def _layers_mask(G: Graph, source: int) -> tuple[list[int], int]:
    seen = source
    layers = []
    frontier = source
    while True:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= G.adj[v]
        nxt &= ~seen
        if not nxt:
            break
        layers.append(nxt)
        seen |= nxt
        frontier = nxt
    return layers, G.full_mask & ~seen


def distance_layers(G: Graph, S: Iterable[int]) -> LayerDecomposition:
    source = G.mask(S)
    if not source:
        raise InputError("distance_layers needs a nonempty source set")
    layers, residue = _layers_mask(G, source)
    return LayerDecomposition(to_set(source), tuple(to_set(x) for x in layers), to_set(residue))


def _degeneracy_mask(G: Graph, mask: int) -> tuple[list[int], int]:
    deg = {v: (G.adj[v] & mask).bit_count() for v in iter_bits(mask)}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    alive = mask
    order = []
    d_max = 0
    while heap:
        d, v = heapq.heappop(heap)
        if not alive >> v & 1 or d != deg[v]:
            continue
        order.append(v)
        d_max = max(d_max, d)
        alive &= ~(1 << v)
        for u in iter_bits(G.adj[v] & alive):
            deg[u] -= 1
            heapq.heappush(heap, (deg[u], u))
    return order, d_max


def degeneracy_order(G: Graph, S: Iterable[int] | None = None) -> tuple[list[int], int]:
    """Min-degree peeling order ``u_1..u_n`` and the degeneracy ``d``.

    Each ``u_i`` has at most ``d`` neighbours among ``u_{i+1}..u_n``; ties go to
    the smaller vertex id.  Greedy colouring should walk the *reversed* order.
    """
    mask = G.full_mask if S is None else G.mask(S)
    return _degeneracy_mask(G, mask)


def back_degree(G: Graph, order: Sequence[int]) -> int:
    """Max number of earlier neighbours over the sequence ``order``."""
    seen = 0
    worst = 0
    for v in order:
        worst = max(worst, (G.adj[v] & seen).bit_count())
        seen |= 1 << v
    return worst


@dataclass
class Coloring:
    """Vertex to colour map.  Colours are arbitrary hashable ids (ints here)."""

    assignment: dict[int, int] = field(default_factory=dict)

    @property
    def colors_used(self) -> int:
        return len(set(self.assignment.values()))

    def monochromatic_edge(self, G: Graph) -> tuple[int, int] | None:
        a = self.assignment
        for u, v in G.edges():
            if u in a and v in a and a[u] == a[v]:
                return u, v
        return None

    def is_proper(self, G: Graph) -> bool:
        return len(self.assignment) == G.n and self.monochromatic_edge(G) is None

    def canonical(self) -> "Coloring":
        """Relabel colours to 0..k-1 in order of first appearance by vertex id."""
        remap: dict[int, int] = {}
        out = {}
        for v in sorted(self.assignment):
            c = self.assignment[v]
            if c not in remap:
                remap[c] = len(remap)
            out[v] = remap[c]
        return Coloring(out)


def greedy_color(G: Graph, order: Sequence[int], palette: Sequence[int] | None = None) -> Coloring:
    """First-fit colouring along ``order`` using colours from ``palette``.

    With no palette, colours are 0, 1, 2, ... without limit.  Running out of
    palette raises InternalContradiction naming the vertex.
    """
    seen_colors: dict[int, int] = {}
    for v in order:
        taken = {seen_colors[u] for u in iter_bits(G.adj[v]) if u in seen_colors}
        if palette is None:
            c = 0
            while c in taken:
                c += 1
        else:
            c = next((c for c in palette if c not in taken), None)
            if c is None:
                raise InternalContradiction(
                    f"palette of {len(palette)} colours exhausted at vertex {v}", vertex=v
                )
        seen_colors[v] = c
    return Coloring(seen_colors)
