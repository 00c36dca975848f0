"""Induced-pattern detection with checkable witnesses.

A t-broom ``(u0, v1 v2, S)`` is the star with centre ``u0`` and leaves
``{v1} | S`` where the edge ``u0 v1`` has been subdivided by ``v2`` hanging
off ``v1``.  The 2-broom is the chair.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from broomcolor.errors import InputError
from broomcolor.graph import Graph, iter_bits, lowest, to_set
from broomcolor.oracle import _color_sort


@dataclass(frozen=True)
class BroomWitness:
    u0: int
    v1: int
    v2: int
    S: tuple[int, ...]

    kind = "broom"

    def __post_init__(self):
        object.__setattr__(self, "S", tuple(sorted(self.S)))

    @property
    def t(self) -> int:
        return len(self.S)

    def vertices(self) -> tuple[int, ...]:
        return (self.u0, self.v1, self.v2, *self.S)

    def mapped(self, ids: Sequence[int]) -> "BroomWitness":
        return BroomWitness(ids[self.u0], ids[self.v1], ids[self.v2], tuple(ids[s] for s in self.S))

    def to_json(self) -> dict:
        return {"kind": "broom", "u0": self.u0, "v1": self.v1, "v2": self.v2, "S": list(self.S)}


@dataclass(frozen=True)
class BicliqueWitness:
    left: tuple[int, ...]
    right: tuple[int, ...]

    kind = "ktt"

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(sorted(self.left)))
        object.__setattr__(self, "right", tuple(sorted(self.right)))

    @property
    def t(self) -> int:
        return len(self.left)

    def vertices(self) -> tuple[int, ...]:
        return (*self.left, *self.right)

    def mapped(self, ids: Sequence[int]) -> "BicliqueWitness":
        return BicliqueWitness(tuple(ids[v] for v in self.left), tuple(ids[v] for v in self.right))

    def to_json(self) -> dict:
        return {"kind": "ktt", "left": list(self.left), "right": list(self.right)}


Witness = BroomWitness | BicliqueWitness


def witness_from_json(data: dict) -> Witness:
    try:
        kind = data["kind"]
        if kind == "broom":
            return BroomWitness(int(data["u0"]), int(data["v1"]), int(data["v2"]), tuple(int(s) for s in data["S"]))
        if kind == "ktt":
            return BicliqueWitness(tuple(int(v) for v in data["left"]), tuple(int(v) for v in data["right"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed witness: {exc}") from exc
    raise InputError(f"unknown witness kind {data.get('kind')!r}")


# ---------------------------------------------------------------------------
# independent sets inside a vertex set


def _clique_cover_size(G: Graph, mask: int) -> int:
    rows = [0] * G.n
    for v in iter_bits(mask):
        rows[v] = mask & ~G.adj[v] & ~(1 << v)
    _, bounds = _color_sort(rows, mask)
    return bounds[-1] if bounds else 0


def independent_mask(G: Graph, mask: int, k: int) -> int | None:
    """Lexicographically least independent k-subset of ``mask`` (as a mask)."""
    if k <= 0:
        return 0
    adj = G.adj

    def search(cand: int, need: int) -> int | None:
        if need == 0:
            return 0
        if cand.bit_count() < need:
            return None
        if need >= 3 and _clique_cover_size(G, cand) < need:
            return None
        while cand.bit_count() >= need:
            v = lowest(cand)
            cand &= ~(1 << v)
            sub = search(cand & ~adj[v], need - 1)
            if sub is not None:
                return sub | 1 << v
        return None

    return search(mask, k)


def find_independent_in(G: Graph, S: Iterable[int] | int, k: int) -> frozenset[int] | None:
    if k < 0:
        raise InputError(f"k must be non-negative, got {k}")
    found = independent_mask(G, G.mask(S), k)
    return None if found is None else to_set(found)


# ---------------------------------------------------------------------------
# brooms


def _broom_from(G: Graph, t: int, centers: Iterable[int]) -> BroomWitness | None:
    adj = G.adj
    for u0 in centers:
        nu = adj[u0]
        if nu.bit_count() < t + 1:
            continue
        for v1 in iter_bits(nu):
            pool = nu & ~adj[v1] & ~(1 << v1)
            if pool.bit_count() < t:
                continue
            for v2 in iter_bits(adj[v1] & ~nu & ~(1 << u0)):
                S = independent_mask(G, pool & ~adj[v2], t)
                if S is not None:
                    return BroomWitness(u0, v1, v2, tuple(iter_bits(S)))
    return None


def find_induced_tbroom(G: Graph, t: int) -> BroomWitness | None:
    """Least induced t-broom under the key (u0, v1, v2, S), or None."""
    if t < 1:
        raise InputError(f"t must be >= 1, got {t}")
    return _broom_from(G, t, range(G.n))


def verify_broom(G: Graph, w: BroomWitness, t: int | None = None) -> bool:
    verts = w.vertices()
    if t is not None and w.t != t:
        return False
    if w.t < 1 or len(set(verts)) != len(verts):
        return False
    if any(not isinstance(v, int) or not 0 <= v < G.n for v in verts):
        return False
    required = {(w.u0, w.v1), (w.v1, w.v2)} | {(w.u0, s) for s in w.S}
    required = {frozenset(e) for e in required}
    for a, b in combinations(verts, 2):
        if G.has_edge(a, b) != (frozenset((a, b)) in required):
            return False
    return True


# ---------------------------------------------------------------------------
# bicliques


def find_induced_ktt(G: Graph, t: int) -> BicliqueWitness | None:
    """Induced K_{t,t} with the lexicographically least left side, or None."""
    if t < 2:
        raise InputError(f"t must be >= 2, got {t}")
    adj = G.adj

    def grow(left: int, size: int, cand: int, common: int):
        if size == t:
            right = independent_mask(G, common, t)
            return None if right is None else (left, right)
        while cand:
            v = lowest(cand)
            cand &= ~(1 << v)
            nxt = common & adj[v]
            if nxt.bit_count() < t:
                continue
            found = grow(left | 1 << v, size + 1, cand & ~adj[v], nxt)
            if found is not None:
                return found
        return None

    found = grow(0, 0, G.full_mask, G.full_mask)
    if found is None:
        return None
    left, right = found
    return BicliqueWitness(tuple(iter_bits(left)), tuple(iter_bits(right)))


def verify_ktt(G: Graph, w: BicliqueWitness, t: int | None = None) -> bool:
    left, right = w.left, w.right
    if len(left) != len(right) or len(left) < 1 or (t is not None and len(left) != t):
        return False
    verts = left + right
    if len(set(verts)) != len(verts) or any(not isinstance(v, int) or not 0 <= v < G.n for v in verts):
        return False
    lm, rm = G.mask(left), G.mask(right)
    return G.is_independent(lm) and G.is_independent(rm) and all(G.complete_to(v, rm) for v in left)


def verify_witness(G: Graph, w: Witness, t: int | None = None) -> bool:
    if isinstance(w, BroomWitness):
        return verify_broom(G, w, t)
    if isinstance(w, BicliqueWitness):
        return verify_ktt(G, w, t)
    return False
