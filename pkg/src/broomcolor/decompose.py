"""Extremal multipartite subgraph Q, the A/B/Z/W split of N(Q), and lemma checks.

Q has parts ``{v_1}, ..., {v_{q-1}}, V_q`` with ``|V_q| = t`` and ``q``
maximum.  Around it:

* ``A``: neutral to V_q and not complete to the singles,
* ``B``: neutral to V_q and complete to the singles,
* ``Z``: complete to V_q,
* ``W``: anticomplete to V_q, split into signature classes ``W_I`` by the set
  ``I`` of singles each vertex sees,
* ``far``: everything at distance >= 2 from Q.

Every structural fact the colourer leans on is re-checked here.  When a check
fails and the argument behind it builds a forbidden subgraph, the violation
carries that witness; when the failure only shows Q was not maximum, it
carries the data for a larger Q instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from broomcolor.detect import BicliqueWitness, BroomWitness, Witness, independent_mask
from broomcolor.errors import InputError
from broomcolor.graph import (
    Graph,
    _components_mask,
    _degeneracy_mask,
    _layers_mask,
    greedy_color,
    iter_bits,
    lowest,
    to_set,
)
from broomcolor.oracle import chromatic_number, max_clique_mask, ramsey_upper

EXACT_CHI_COMPONENT_LIMIT = 20


@dataclass(frozen=True)
class MultipartiteQ:
    singles: tuple[int, ...]
    last: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "last", tuple(sorted(self.last)))

    @property
    def q(self) -> int:
        return len(self.singles) + 1

    @property
    def t(self) -> int:
        return len(self.last)

    def vertices(self) -> frozenset[int]:
        return frozenset(self.singles) | frozenset(self.last)

    def mask(self) -> int:
        out = 0
        for v in (*self.singles, *self.last):
            out |= 1 << v
        return out

    def parts(self) -> list[tuple[int, ...]]:
        return [(v,) for v in self.singles] + [self.last]

    def mapped(self, ids) -> "MultipartiteQ":
        return MultipartiteQ(tuple(ids[v] for v in self.singles), tuple(ids[v] for v in self.last))

    def to_json(self) -> dict:
        return {"singles": list(self.singles), "last": list(self.last)}


def check_Q(G: Graph, Q: MultipartiteQ) -> str | None:
    """None if Q induces a complete multipartite graph of the right shape, else why not."""
    verts = (*Q.singles, *Q.last)
    if len(set(verts)) != len(verts):
        return "parts overlap"
    if Q.q < 2:
        return "q must be at least 2"
    if any(not 0 <= v < G.n for v in verts):
        return "vertex out of range"
    parts = Q.parts()
    for i, P in enumerate(parts):
        for a in P:
            for b in P:
                if a != b and G.has_edge(a, b):
                    return f"part {i} not independent: {a}-{b}"
            for j, R in enumerate(parts):
                if j != i:
                    for b in R:
                        if not G.has_edge(a, b):
                            return f"missing cross edge {a}-{b}"
    return None


def find_max_Q(G: Graph, t: int) -> MultipartiteQ | None:
    """Q with the largest q by exact search, or None if no vertex sees an independent t-set.

    For each independent t-set T with a nonempty common neighbourhood, the best
    singles are a maximum clique of that neighbourhood.  T is enumerated in
    lexicographic order to find the best q; the returned Q is then the least
    one with that q, comparing the singles first.
    """
    if t < 2:
        raise InputError(f"t must be >= 2, got {t}")
    adj = G.adj
    cap = max_clique_mask(adj, G.full_mask).bit_count()  # q <= omega
    best: list = [1, None]  # q, (T mask, clique mask)

    def grow(T: int, size: int, cand: int, common: int) -> bool:
        if size == t:
            K = max_clique_mask(adj, common)
            if K.bit_count() + 1 > best[0]:
                best[0], best[1] = K.bit_count() + 1, (T, K)
            return best[0] >= cap
        while cand:
            v = lowest(cand)
            cand &= ~(1 << v)
            nxt = common & adj[v]
            # the singles live in the common neighbourhood, so it must beat best
            if nxt.bit_count() < best[0]:
                continue
            if grow(T | 1 << v, size + 1, cand & ~adj[v], nxt):
                return True
        return False

    grow(0, 0, G.full_mask, G.full_mask)
    if best[1] is None:
        return None
    T, K = best[1]
    return _least_Q(G, t, best[0]) or MultipartiteQ(tuple(iter_bits(K)), tuple(iter_bits(T)))


def _least_Q(G: Graph, t: int, q: int) -> MultipartiteQ | None:
    """Lexicographically least (singles, last) among Qs with q parts."""
    adj = G.adj

    def extend(K: int, size: int, cand: int, common: int):
        if independent_mask(G, common, t) is None:
            return None
        if size == q - 1:
            T = independent_mask(G, common, t)
            return MultipartiteQ(tuple(iter_bits(K)), tuple(iter_bits(T)))
        while cand:
            v = lowest(cand)
            cand &= ~(1 << v)
            found = extend(K | 1 << v, size + 1, cand & adj[v], common & adj[v])
            if found is not None:
                return found
        return None

    return extend(0, 0, G.full_mask, G.full_mask)


def improve_Q(G: Graph, Q: MultipartiteQ, v: int, T: Iterable[int]) -> MultipartiteQ:
    """Parts ``V_1..V_{q-1}, {v}, T``: one more part than Q."""
    T = tuple(sorted(T))
    if len(T) != Q.t:
        raise InputError(f"T has {len(T)} vertices, expected {Q.t}")
    for s in Q.singles:
        if not G.has_edge(v, s):
            raise InputError(f"{v} not adjacent to single {s}")
        for x in T:
            if not G.has_edge(x, s):
                raise InputError(f"{x} not adjacent to single {s}")
    for x in T:
        if not G.has_edge(v, x):
            raise InputError(f"{x} not adjacent to new single {v}")
    for a in T:
        for b in T:
            if a < b and G.has_edge(a, b):
                raise InputError(f"T not independent: {a}-{b}")
    new = MultipartiteQ((*Q.singles, v), T)
    problem = check_Q(G, new)
    if problem:
        raise InputError(f"improved Q invalid: {problem}")
    return new


# ---------------------------------------------------------------------------
# the partition of N(Q)


@dataclass
class NeighborhoodPartition:
    Q: MultipartiteQ
    omega: int
    A: frozenset[int]
    B: frozenset[int]
    Z: frozenset[int]
    W: frozenset[int]
    far: frozenset[int]
    layer2: frozenset[int]
    W0: frozenset[int]
    w0_mode: str
    sig_classes: dict[frozenset[int], frozenset[int]]
    w_components: list[frozenset[int]]
    complete_to_Q: frozenset[int] = frozenset()
    w0_colorings: dict[int, dict[int, int]] = field(default_factory=dict, repr=False)

    @property
    def N(self) -> frozenset[int]:
        return self.A | self.B | self.Z | self.W

    def qualifying_components(self) -> list[frozenset[int]]:
        """Components of G[W \\ W0], ordered by minimum vertex."""
        return [c for c in self.w_components if not (c & self.W0)]

    def sizes(self) -> dict[str, int]:
        return {
            "A": len(self.A), "B": len(self.B), "Z": len(self.Z), "W": len(self.W),
            "W0": len(self.W0), "far": len(self.far), "signatures": len(self.sig_classes),
        }

    def to_json(self) -> dict:
        return {
            "Q": self.Q.to_json(),
            "omega": self.omega,
            "A": sorted(self.A), "B": sorted(self.B), "Z": sorted(self.Z), "W": sorted(self.W),
            "W0": sorted(self.W0), "far": sorted(self.far),
            "signatures": [
                {"I": sorted(I), "W_I": sorted(S)}
                for I, S in sorted(self.sig_classes.items(), key=lambda kv: sorted(kv[0]))
            ],
        }


def partition_neighborhood(
    G: Graph, Q: MultipartiteQ, mode: str = "alpha", omega: int | None = None
) -> NeighborhoodPartition:
    """Split N(Q).  ``mode`` picks the W0 rule.

    ``alpha``: a W-component is in W0 when it has no independent t-set.
    ``chi``: a W-component is in W0 when its chromatic number is at most
    3 R(t, omega); exact up to 20 vertices, degeneracy + 1 above that.
    """
    if mode not in ("alpha", "chi"):
        raise InputError(f"unknown W0 mode {mode!r}")
    t = Q.t
    if omega is None:
        omega = max_clique_mask(G.adj, G.full_mask).bit_count()
    qmask = Q.mask()
    last = G.mask(Q.last)
    singles = G.mask(Q.singles)
    layers, _ = _layers_mask(G, qmask)
    N1 = layers[0] if layers else 0
    far = 0
    for layer in layers[1:]:
        far |= layer
    layer2 = layers[1] if len(layers) > 1 else 0

    A = B = Z = W = full = 0
    for v in iter_bits(N1):
        seen = G.adj[v] & last
        bit = 1 << v
        if seen == last:
            Z |= bit
            if G.adj[v] & singles == singles:
                full |= bit
        elif seen == 0:
            W |= bit
        elif G.adj[v] & singles == singles:
            B |= bit
        else:
            A |= bit

    sig: dict[frozenset[int], int] = {}
    for w in iter_bits(W):
        key = to_set(G.adj[w] & singles)
        sig[key] = sig.get(key, 0) | 1 << w

    comps = _components_mask(G, W)
    W0 = 0
    w0_colorings: dict[int, dict[int, int]] = {}
    threshold = 3 * ramsey_upper(t, omega)
    for comp in comps:
        if mode == "alpha":
            if independent_mask(G, comp, t) is None:
                W0 |= comp
        else:
            if comp.bit_count() <= EXACT_CHI_COMPONENT_LIMIT:
                chi, col = chromatic_number(G, comp)
                coloring = col.assignment
            else:
                order, _ = _degeneracy_mask(G, comp)
                col = greedy_color(G, order[::-1])
                chi, coloring = col.colors_used, col.assignment
            if chi <= threshold:
                W0 |= comp
                w0_colorings[lowest(comp)] = coloring

    return NeighborhoodPartition(
        Q=Q, omega=omega,
        A=to_set(A), B=to_set(B), Z=to_set(Z), W=to_set(W),
        far=to_set(far), layer2=to_set(layer2), W0=to_set(W0), w0_mode=mode,
        sig_classes={I: to_set(m) for I, m in sig.items()},
        w_components=[to_set(c) for c in comps],
        complete_to_Q=to_set(full),
        w0_colorings=w0_colorings,
    )


# ---------------------------------------------------------------------------
# refinement of Z


@dataclass
class ZRefinement:
    blocks: list[frozenset[int]]
    components: list[frozenset[int]]
    Z_X: list[frozenset[int]]
    F_X: list[frozenset[int]]

    @property
    def p(self) -> int:
        return len(self.blocks)


class ForbiddenSubgraph(Exception):
    """Control-flow signal: a witness proves the input is outside the class."""

    def __init__(self, witness: Witness, reason: str):
        self.witness = witness
        self.reason = reason
        super().__init__(f"{reason}: {witness}")


def _split_edge(G: Graph, z: int, comp: int) -> tuple[int, int] | None:
    """An edge ww' inside comp with z adjacent to w but not to w'."""
    inside = G.adj[z] & comp
    outside = comp & ~G.adj[z]
    for w in iter_bits(inside):
        hit = G.adj[w] & outside
        if hit:
            return w, lowest(hit)
    return None


def refine_Z(G: Graph, part: NeighborhoodPartition) -> ZRefinement:
    """Coarsest partition of Z compatible with every 'complete to X' split.

    X ranges over the components of G[W \\ W0].  Raises ForbiddenSubgraph if
    some z is neither complete nor anticomplete to some X.
    """
    comps = part.qualifying_components()
    last = part.Q.last
    Zm = G.mask(part.Z)
    zx_list = []
    for X in comps:
        Xm = G.mask(X)
        members = 0
        for z in iter_bits(Zm):
            seen = G.adj[z] & Xm
            if seen == Xm:
                members |= 1 << z
            elif seen:
                w, w2 = _split_edge(G, z, Xm)
                raise ForbiddenSubgraph(BroomWitness(z, w, w2, last), "Z vertex neutral to a W component")
        zx_list.append(members)
    classes: dict[tuple[bool, ...], int] = {}
    for z in iter_bits(Zm):
        key = tuple(bool(m >> z & 1) for m in zx_list)
        classes[key] = classes.get(key, 0) | 1 << z
    blocks = sorted(classes.values(), key=lowest)
    F_X = []
    for m in zx_list:
        F_X.append(frozenset(k for k, blk in enumerate(blocks) if not blk & m))
    return ZRefinement(
        blocks=[to_set(b) for b in blocks],
        components=comps,
        Z_X=[to_set(m) for m in zx_list],
        F_X=F_X,
    )


# ---------------------------------------------------------------------------
# lemma validation


@dataclass
class Violation:
    kind: str
    detail: str
    witness: Witness | None = None
    trigger: tuple[int, tuple[int, ...]] | None = None  # (v, T) for improve_Q
    better_Q: MultipartiteQ | None = None

    @property
    def restart(self) -> bool:
        return self.witness is None and (self.trigger is not None or self.better_Q is not None)

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.trigger is not None:
            out["trigger"] = {"v": self.trigger[0], "T": list(self.trigger[1])}
        if self.better_Q is not None:
            out["better_Q"] = self.better_Q.to_json()
        return out


def a_labels(G: Graph, Q: MultipartiteQ, A: Iterable[int]) -> dict[tuple[int, int, int], frozenset[int]]:
    """Group A by label (a, b, j): least neighbour a and non-neighbour b in V_q,
    least index j of a non-adjacent single."""
    out: dict[tuple[int, int, int], set[int]] = {}
    for v in sorted(A):
        a = next(x for x in Q.last if G.has_edge(v, x))
        b = next(x for x in Q.last if not G.has_edge(v, x))
        j = next(i for i, s in enumerate(Q.singles) if not G.has_edge(v, s))
        out.setdefault((a, b, j), set()).add(v)
    return {k: frozenset(v) for k, v in out.items()}


def first_nonneighbor_blocks(G: Graph, Q: MultipartiteQ, S: Iterable[int]) -> list[frozenset[int]]:
    """Blocks S_1..S_{q-1}: S_i holds the members whose first non-adjacent single is v_i."""
    blocks: list[set[int]] = [set() for _ in Q.singles]
    for v in S:
        i = next(i for i, s in enumerate(Q.singles) if not G.has_edge(v, s))
        blocks[i].add(v)
    return [frozenset(b) for b in blocks]


def _part_split(G: Graph, Q: MultipartiteQ, z1: int) -> tuple[int, int] | None:
    """(a_i, a_j) from distinct parts of Q with z1 ~ a_i and z1 !~ a_j."""
    parts = Q.parts()
    for i, P in enumerate(parts):
        for ai in P:
            if not G.has_edge(z1, ai):
                continue
            for j, R in enumerate(parts):
                if j == i:
                    continue
                for aj in R:
                    if not G.has_edge(z1, aj):
                        return ai, aj
    return None


def far_degree_witness(G: Graph, Q: MultipartiteQ, zk: int, t: int) -> BroomWitness | None:
    """Turn a far vertex of large far-degree into a t-broom.

    Walks a shortest path zk ... z1 z0 back to Q and looks for an independent
    t-set in the three pieces of N(zk) & far cut out by N(z_{k-2}) and
    N(z_{k-1}).
    """
    layers, _ = _layers_mask(G, Q.mask())
    far = 0
    for layer in layers[1:]:
        far |= layer
    levels = [Q.mask(), *layers]
    k = next(i for i, L in enumerate(levels) if L >> zk & 1)
    path = [zk]
    for i in range(k - 1, -1, -1):
        path.append(lowest(G.adj[path[-1]] & levels[i]))
    z = path[::-1]  # z[i] is in layer i
    split = _part_split(G, Q, z[1])
    if split is None:
        return None
    ai, aj = split
    D = G.adj[zk] & far

    if k >= 3:
        T = independent_mask(G, D & G.adj[z[k - 2]], t)
        if T is not None:
            S = tuple(iter_bits(T))
            if k == 3:
                return BroomWitness(z[1], ai, aj, S)
            return BroomWitness(z[k - 2], z[k - 3], z[k - 4], S)
    rest = D & ~G.adj[z[k - 2]]
    T = independent_mask(G, rest & ~G.adj[z[k - 1]], t)
    if T is not None:
        return BroomWitness(zk, z[k - 1], z[k - 2], tuple(iter_bits(T)))
    T = independent_mask(G, rest & G.adj[z[k - 1]], t)
    if T is not None:
        S = tuple(iter_bits(T))
        if k == 2:
            return BroomWitness(z[1], ai, aj, S)
        return BroomWitness(z[k - 1], z[k - 2], z[k - 3], S)
    return None


def validate_lemmas(
    G: Graph,
    t: int,
    Q: MultipartiteQ,
    part: NeighborhoodPartition,
    mode: str = "general",
) -> list[Violation]:
    """Re-check every structural fact about (Q, part); empty list means all hold.

    ``mode`` is ``general``, ``chair`` or ``ktt`` and switches on the
    mode-specific checks (clique blocks of A for the chair, Z size and
    W-versus-A/B separation for the biclique-free case).
    """
    out: list[Violation] = []
    omega = part.omega
    R = ramsey_upper(t, omega)
    last_m = G.mask(Q.last)
    singles_m = G.mask(Q.singles)

    # maximality: nobody in N(Q) sees all of Q
    for v in sorted(part.complete_to_Q):
        out.append(Violation("complete_to_Q", f"{v} is complete to V(Q)", trigger=(v, Q.last)))

    # far layer has small maximum degree
    far_m = G.mask(part.far)
    for z in iter_bits(far_m):
        d = (G.adj[z] & far_m).bit_count()
        if d >= 3 * R:
            w = far_degree_witness(G, Q, z, t)
            out.append(Violation("far_degree", f"far vertex {z} has far-degree {d} >= {3 * R}", witness=w))
            break

    # W sees nothing in the second layer
    l2 = G.mask(part.layer2)
    for w in sorted(part.W):
        hit = G.adj[w] & l2
        if hit:
            vi = lowest(G.adj[w] & singles_m)
            out.append(Violation(
                "w_second_layer", f"W vertex {w} adjacent to second layer",
                witness=BroomWitness(vi, w, lowest(hit), Q.last),
            ))
            break

    # distinct signature classes are anticomplete
    sig_items = sorted(part.sig_classes.items(), key=lambda kv: sorted(kv[0]))
    where = {}
    for I, members in sig_items:
        for w in members:
            where[w] = I
    for w in sorted(part.W):
        for w2 in iter_bits(G.adj[w] & G.mask(part.W)):
            I, I2 = where[w], where[w2]
            if I != I2:
                if I - I2:
                    a, x, y = min(I - I2), w, w2
                else:
                    a, x, y = min(I2 - I), w2, w
                out.append(Violation(
                    "signature_edge", f"edge {w}-{w2} joins W classes",
                    witness=BroomWitness(a, x, y, Q.last),
                ))
                break
        else:
            continue
        break

    # Z versus components of each G[W_I]
    Zm = G.mask(part.Z)
    for I, members in sig_items:
        for comp in _components_mask(G, G.mask(members)):
            inside = 0
            for z in iter_bits(Zm):
                seen = G.adj[z] & comp
                if seen == comp:
                    inside |= 1 << z
                elif seen:
                    w, w2 = _split_edge(G, z, comp)
                    out.append(Violation(
                        "z_neutral", f"Z vertex {z} neutral to a W component",
                        witness=BroomWitness(z, w, w2, Q.last),
                    ))
            T = independent_mask(G, comp, t)
            if T is None:
                continue
            for z in iter_bits(inside):
                miss = Zm & ~inside & ~G.adj[z]
                if miss:
                    out.append(Violation(
                        "z_split", f"Z vertices {z} and {lowest(miss)} split by a W component",
                        witness=BroomWitness(z, Q.last[0], lowest(miss), tuple(iter_bits(T))),
                    ))
                    break

    # B has small maximum degree, else Q grows
    Bm = G.mask(part.B)
    for v in iter_bits(Bm):
        nb = G.adj[v] & Bm
        if nb.bit_count() >= R:
            T = independent_mask(G, nb, t)
            out.append(Violation(
                "b_degree", f"B vertex {v} has B-degree {nb.bit_count()} >= {R}",
                trigger=None if T is None else (v, tuple(iter_bits(T))),
            ))
            break

    # A label classes have no independent t-set; |A| is bounded
    for (a, b, j), members in sorted(a_labels(G, Q, part.A).items()):
        T = independent_mask(G, G.mask(members), t)
        if T is not None:
            out.append(Violation(
                "a_label_independent", f"A label class ({a},{b},{j}) has an independent {t}-set",
                witness=BroomWitness(a, Q.singles[j], b, tuple(iter_bits(T))),
            ))
    if len(part.A) >= t * t * omega * R:
        out.append(Violation("a_size", f"|A| = {len(part.A)} >= {t * t * omega * R}"))

    if mode == "chair":
        out.extend(_chair_checks(G, Q, part))
    if mode == "ktt":
        out.extend(_ktt_checks(G, t, Q, part))
    return out


def _chair_checks(G: Graph, Q: MultipartiteQ, part: NeighborhoodPartition) -> list[Violation]:
    out = []
    for side in (0, 1):
        vq, other = Q.last[side], Q.last[1 - side]
        A_side = frozenset(v for v in part.A if G.has_edge(v, vq))
        for i, block in enumerate(first_nonneighbor_blocks(G, Q, A_side)):
            bm = G.mask(block)
            pair = independent_mask(G, bm, 2)
            if pair is not None:
                u1, u2 = iter_bits(pair)
                out.append(Violation(
                    "a_block_not_clique", f"A block {i} beside {vq} is not a clique",
                    witness=BroomWitness(vq, Q.singles[i], other, (u1, u2)),
                ))
    return out


def _ktt_checks(G: Graph, t: int, Q: MultipartiteQ, part: NeighborhoodPartition) -> list[Violation]:
    out = []
    omega = part.omega
    Zm = G.mask(part.Z)
    T = independent_mask(G, Zm, t)
    if T is not None:
        out.append(Violation(
            "z_independent", f"Z has an independent {t}-set",
            witness=BicliqueWitness(tuple(iter_bits(T)), Q.last),
        ))
        return out
    R1 = ramsey_upper(t - 1, omega)
    for s in Q.singles:
        miss = Zm & ~G.adj[s]
        T = independent_mask(G, miss, t - 1)
        if T is not None:
            out.append(Violation(
                "z_nonneighbors_independent", f"Z minus N({s}) has an independent {t - 1}-set",
                witness=BicliqueWitness((*iter_bits(T), s), Q.last),
            ))
        elif miss.bit_count() >= R1:
            out.append(Violation("z_nonneighbors_size", f"|Z minus N({s})| >= {R1}"))
    # Z grouped by exact set I of non-adjacent singles: |Z_I| < R(t, |I| + 1)
    classes: dict[frozenset[int], int] = {}
    for z in iter_bits(Zm):
        I = frozenset(s for s in Q.singles if not G.has_edge(z, s))
        classes[I] = classes.get(I, 0) | 1 << z
    for I, members in sorted(classes.items(), key=lambda kv: sorted(kv[0])):
        cap = ramsey_upper(t, len(I) + 1)
        if members.bit_count() < cap:
            continue
        K = max_clique_mask(G.adj, members)
        if K.bit_count() >= len(I) + 1:
            K = tuple(iter_bits(K))[: len(I) + 1]
            singles = tuple(s for s in Q.singles if s not in I) + K
            out.append(Violation(
                "z_class_size", f"|Z_I| = {members.bit_count()} >= {cap} for I={sorted(I)}",
                better_Q=MultipartiteQ(singles, Q.last),
            ))
        else:
            out.append(Violation("z_class_size", f"|Z_I| >= {cap} for I={sorted(I)}"))
    # A and B see nothing of W \ W0
    AB = G.mask(part.A | part.B)
    rest = G.mask(part.W - part.W0)
    for v in iter_bits(AB):
        if G.adj[v] & rest:
            out.append(Violation("ab_meets_w_rest", f"{v} in A or B is adjacent to W minus W0"))
            break
    return out


@dataclass
class Decomposition:
    Q: MultipartiteQ
    partition: NeighborhoodPartition
    refinement: ZRefinement | None
    violations: list[Violation]
    restarts: int

    def to_json(self) -> dict:
        out = self.partition.to_json()
        out["q"] = self.Q.q
        out["restarts"] = self.restarts
        out["violations"] = [v.to_json() for v in self.violations]
        if self.refinement is not None:
            out["Z_blocks"] = [sorted(b) for b in self.refinement.blocks]
        return out


def decompose(G: Graph, t: int, mode: str = "general") -> Decomposition | None:
    """find_max_Q, partition, validate; follow restart triggers until stable.

    Returns None when no Q exists.  Violations carrying witnesses are left in
    the result for the caller to act on.
    """
    Q = find_max_Q(G, t)
    if Q is None:
        return None
    omega = max_clique_mask(G.adj, G.full_mask).bit_count()
    w0_mode = "chi" if mode == "ktt" else "alpha"
    restarts = 0
    while True:
        part = partition_neighborhood(G, Q, w0_mode, omega)
        violations = validate_lemmas(G, t, Q, part, mode)
        step = next((v for v in violations if v.restart), None)
        if step is None or restarts >= omega:
            break
        Q = step.better_Q if step.better_Q is not None else improve_Q(G, Q, *step.trigger)
        restarts += 1
    refinement = None
    if not any(v.witness for v in violations):
        try:
            refinement = refine_Z(G, part)
        except ForbiddenSubgraph as exc:
            violations.append(Violation("z_neutral", exc.reason, witness=exc.witness))
    return Decomposition(Q, part, refinement, violations, restarts)
