"""Exact desk-scale oracles: clique number, independence number, chromatic number.

Also houses the Ramsey upper-bound table used by all certified bound
arithmetic.  Everything here works on bitmask rows and knows nothing about
brooms or decompositions.
"""

from __future__ import annotations

import os
from functools import lru_cache
from math import comb
from typing import Iterable

from broomcolor.errors import CapacityError, InputError
from broomcolor.graph import Coloring, Graph, _degeneracy_mask, greedy_color, iter_bits, lowest, to_set

DEFAULT_CHI_CEILING = 64
CHI_CEILING_ENV = "BROOMCOLOR_CHI_CEILING"


def chi_ceiling() -> int:
    raw = os.environ.get(CHI_CEILING_ENV)
    return int(raw) if raw else DEFAULT_CHI_CEILING


# ---------------------------------------------------------------------------
# cliques and independent sets


def _color_sort(adj, P: int) -> tuple[list[int], list[int]]:
    order: list[int] = []
    bounds: list[int] = []
    k = 0
    uncolored = P
    while uncolored:
        k += 1
        q = uncolored
        while q:
            v = lowest(q)
            q &= ~adj[v] & ~(1 << v)
            uncolored &= ~(1 << v)
            order.append(v)
            bounds.append(k)
    return order, bounds


def max_clique_mask(adj, P: int) -> int:
    """A maximum clique inside the vertex mask ``P`` for adjacency rows ``adj``."""
    best = [0, 0]  # size, mask

    def expand(R: int, size: int, P: int) -> None:
        order, bounds = _color_sort(adj, P)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best[0]:
                return
            v = order[i]
            bit = 1 << v
            sub = P & adj[v]
            if sub:
                expand(R | bit, size + 1, sub)
            elif size + 1 > best[0]:
                best[0], best[1] = size + 1, R | bit
            P &= ~bit

    if P:
        expand(0, 0, P)
    return best[1]


def _complement_rows(G: Graph, P: int) -> list[int]:
    rows = [0] * G.n
    for v in iter_bits(P):
        rows[v] = P & ~G.adj[v] & ~(1 << v)
    return rows


def clique_number(G: Graph, S: Iterable[int] | int | None = None) -> tuple[int, frozenset[int]]:
    P = G.full_mask if S is None else G.mask(S)
    clique = max_clique_mask(G.adj, P)
    return clique.bit_count(), to_set(clique)


def omega(G: Graph, S: Iterable[int] | int | None = None) -> int:
    P = G.full_mask if S is None else G.mask(S)
    return max_clique_mask(G.adj, P).bit_count()


def independence_number(G: Graph, S: Iterable[int] | int | None = None) -> tuple[int, frozenset[int]]:
    P = G.full_mask if S is None else G.mask(S)
    ind = max_clique_mask(_complement_rows(G, P), P)
    return ind.bit_count(), to_set(ind)


# ---------------------------------------------------------------------------
# colouring


def _k_coloring(G: Graph, verts: list[int], k: int, seed_clique: list[int]) -> dict[int, int] | None:
    """Backtracking DSATUR search for a proper colouring with at most k colours."""
    adj = G.adj
    vmask = 0
    for v in verts:
        vmask |= 1 << v
    color: dict[int, int] = {}
    forbidden = {v: 0 for v in verts}
    for c, v in enumerate(seed_clique):
        color[v] = c
        for u in iter_bits(adj[v] & vmask):
            forbidden[u] |= 1 << c
    if len(seed_clique) > k:
        return None
    degree = {v: (adj[v] & vmask).bit_count() for v in verts}

    def pick() -> int | None:
        best = None
        best_key = None
        for v in verts:
            if v in color:
                continue
            key = (forbidden[v].bit_count(), degree[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def search(used: int) -> bool:
        v = pick()
        if v is None:
            return True
        # new colours are interchangeable, so only try the first unused one
        limit = min(used + 1, k)
        for c in range(limit):
            if forbidden[v] >> c & 1:
                continue
            color[v] = c
            touched = []
            for u in iter_bits(adj[v] & vmask):
                if u not in color and not forbidden[u] >> c & 1:
                    forbidden[u] |= 1 << c
                    touched.append(u)
            if search(max(used, c + 1)):
                return True
            for u in touched:
                forbidden[u] &= ~(1 << c)
            del color[v]
        return False

    if search(len(seed_clique)):
        return color
    return None


def color_with_at_most(G: Graph, k: int, S: Iterable[int] | int | None = None) -> Coloring | None:
    """A proper colouring of G[S] with colours 0..k-1, or None if none exists."""
    P = G.full_mask if S is None else G.mask(S)
    verts = list(iter_bits(P))
    if not verts:
        return Coloring({})
    if k <= 0:
        return None
    clique = sorted(iter_bits(max_clique_mask(G.adj, P)))
    found = _k_coloring(G, verts, k, clique)
    return None if found is None else Coloring(found)


def chromatic_number(
    G: Graph, S: Iterable[int] | int | None = None, ceiling: int | None = None
) -> tuple[int, Coloring]:
    """Exact chromatic number of G[S] with an optimal colouring.

    Raises CapacityError above the exact-solver ceiling (default 64 vertices,
    overridable through the BROOMCOLOR_CHI_CEILING environment variable).
    """
    P = G.full_mask if S is None else G.mask(S)
    n = P.bit_count()
    limit = chi_ceiling() if ceiling is None else ceiling
    if n > limit:
        raise CapacityError(
            f"exact chromatic number requested for {n} vertices (ceiling {limit}); "
            "use the certified-bound colouring instead"
        )
    if n == 0:
        return 0, Coloring({})
    verts = list(iter_bits(P))
    clique = sorted(iter_bits(max_clique_mask(G.adj, P)))
    # greedy upper bound along a smallest-last order
    order, _ = _degeneracy_mask(G, P)
    upper = greedy_color(G, order[::-1])
    best = upper.assignment
    hi = upper.colors_used
    k = len(clique)
    while k < hi:
        found = _k_coloring(G, verts, k, clique)
        if found is not None:
            best = found
            hi = k
            break
        k += 1
    return hi, Coloring(dict(best)).canonical()


# ---------------------------------------------------------------------------
# Ramsey numbers

# Classical exact values R(s, k) with 3 <= s <= k.
EXACT_RAMSEY: dict[tuple[int, int], int] = {
    (3, 3): 6,
    (3, 4): 9,
    (3, 5): 14,
    (3, 6): 18,
    (3, 7): 23,
    (3, 8): 28,
    (3, 9): 36,
    (4, 4): 18,
    (4, 5): 25,
}


def ramsey_binomial(s: int, k: int) -> int:
    """Erdos-Szekeres bound R(s, k) <= C(s+k-2, s-1)."""
    return comb(s + k - 2, s - 1)


@lru_cache(maxsize=None)
def _ramsey_upper(s: int, k: int) -> int:
    if s > k:
        s, k = k, s
    if s == 1:
        return 1
    if s == 2:
        return k
    if (s, k) in EXACT_RAMSEY:
        return EXACT_RAMSEY[(s, k)]
    return min(ramsey_binomial(s, k), _ramsey_upper(s - 1, k) + _ramsey_upper(s, k - 1))


def ramsey_upper(s: int, k: int) -> int:
    """Certified upper bound on R(s, k): exact where tabled, else recursive bound.

    The fallback is R(s, k) <= R(s-1, k) + R(s, k-1) seeded with the table,
    which never exceeds the binomial bound.
    """
    if s < 1 or k < 1:
        raise InputError(f"Ramsey arguments must be positive, got ({s}, {k})")
    return _ramsey_upper(s, k)


def ramsey_is_exact(s: int, k: int) -> bool:
    a, b = min(s, k), max(s, k)
    return a <= 2 or (a, b) in EXACT_RAMSEY
