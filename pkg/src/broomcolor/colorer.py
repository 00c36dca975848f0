"""Certifying colourings of t-broom-free and {t-broom, K_{t,t}}-free graphs.

Each recursion level works on an induced subgraph ``H`` whose vertex ``i`` is
vertex ``ids[i]`` of the input.  Colourings are returned in local ids with
canonical colours ``0..k-1``; witnesses are mapped to input ids as soon as
they are found.  Every level records a trace node (in input ids) that the
verifier can replay.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

from broomcolor.bounds import BoundFunction, certified_bound
from broomcolor.certify import COLORED, NOT_IN_CLASS, CertifiedResult, graph_hash
from broomcolor.decompose import (
    ForbiddenSubgraph,
    MultipartiteQ,
    NeighborhoodPartition,
    ZRefinement,
    find_max_Q,
    first_nonneighbor_blocks,
    improve_Q,
    partition_neighborhood,
    refine_Z,
    validate_lemmas,
)
from broomcolor.detect import (
    BicliqueWitness,
    BroomWitness,
    find_induced_ktt,
    find_induced_tbroom,
    independent_mask,
    verify_witness,
)
from broomcolor.errors import InputError, InternalContradiction
from broomcolor.graph import (
    Coloring,
    Graph,
    _components_mask,
    _degeneracy_mask,
    back_degree,
    greedy_color,
    iter_bits,
    lowest,
)
from broomcolor.oracle import color_with_at_most, max_clique_mask, omega as clique_size, ramsey_upper

log = logging.getLogger(__name__)


def _greedy(H: Graph, mask: int) -> dict[int, int]:
    order, _ = _degeneracy_mask(H, mask)
    return greedy_color(H, order[::-1]).assignment


def _ncolors(assignment: dict[int, int]) -> int:
    return len(set(assignment.values()))


def _roots(ids, mask_or_set) -> list[int]:
    if isinstance(mask_or_set, int):
        return [ids[v] for v in iter_bits(mask_or_set)]
    return sorted(ids[v] for v in mask_or_set)


# ---------------------------------------------------------------------------
# colouring C \ W0 with shared palettes


@dataclass
class PaletteAllocation:
    block_palettes: list[list[int]] = field(default_factory=list)
    overflow: list[int] = field(default_factory=list)
    component_palettes: list[list[int]] = field(default_factory=list)

    @property
    def size(self) -> int:
        return sum(len(p) for p in self.block_palettes) + len(self.overflow)


def color_C_minus_W0(
    H: Graph,
    part: NeighborhoodPartition,
    ref: ZRefinement,
    recurse: Callable[[int], dict[int, int]],
) -> tuple[dict[int, int], PaletteAllocation]:
    """Colour Z and W \\ W0 with colours 0..k-1.

    Block S_i gets its own palette R_i.  Component X reuses the palettes of
    the blocks anticomplete to it, then spills into a shared overflow R sized
    for the hungriest component.  ``recurse(mask)`` colours G[mask] with
    canonical colours.
    """
    out: dict[int, int] = {}
    alloc = PaletteAllocation()
    offset = 0
    for block in ref.blocks:
        sub = recurse(H.mask(block))
        k = _ncolors(sub)
        pal = list(range(offset, offset + k))
        alloc.block_palettes.append(pal)
        for v, c in sub.items():
            out[v] = pal[c]
        offset += k
    comp_cols = []
    need = 0
    for X, F in zip(ref.components, ref.F_X):
        sub = recurse(H.mask(X))
        reuse = sum(len(alloc.block_palettes[k]) for k in F)
        need = max(need, _ncolors(sub) - reuse)
        comp_cols.append(sub)
    alloc.overflow = list(range(offset, offset + need))
    for X, F, sub in zip(ref.components, ref.F_X, comp_cols):
        pal = [c for k in sorted(F) for c in alloc.block_palettes[k]] + alloc.overflow
        alloc.component_palettes.append(pal)
        if _ncolors(sub) > len(pal):
            raise InternalContradiction(f"component palette of {len(pal)} colours too small")
        for v, c in sub.items():
            out[v] = pal[c]
    return out, alloc


# ---------------------------------------------------------------------------
# degenerate split of an A label class


@dataclass
class SplitResult:
    X: frozenset[int]
    ordering: list[int]
    steps: int
    back_degree: int
    threshold: int
    x_bound: int


def split_A_degenerate(
    H: Graph,
    Q: MultipartiteQ,
    a1: int,
    a2: int,
    members,
    omega: int,
) -> SplitResult:
    """Peel off X so that the rest of the class is (2R(t, w) - 1)-degenerate.

    ``members`` must see ``a1``, miss ``a2`` and miss some single.  Blocks
    A_1..A_{q-1} group members by first non-adjacent single.  While some
    x in H & A_j has >= 2R(t, w) neighbours in H & A_{>=j} (least such j),
    the non-neighbours of x in H & A_{>=j} move to X and H shrinks to the
    neighbours.  The returned ordering lists A \\ X block by block; every
    vertex has at most 2R - 1 neighbours after it.

    Raises ForbiddenSubgraph (local ids) when a block or an extracted piece
    is too large, with the broom or biclique that explains why.
    """
    t = Q.t
    R = ramsey_upper(t, omega)
    R1 = ramsey_upper(t - 1, omega)
    thr = 2 * R
    x_cap = (t + 2) * R1
    Am = H.mask(members)
    blocks = [H.mask(b) for b in first_nonneighbor_blocks(H, Q, members)]
    for j, blk in enumerate(blocks):
        T = independent_mask(H, blk, t)
        if T is not None:
            raise ForbiddenSubgraph(
                BroomWitness(a1, Q.singles[j], a2, tuple(iter_bits(T))),
                "A block has an independent t-set",
            )
    at_least = [0] * (len(blocks) + 1)
    for j in range(len(blocks) - 1, -1, -1):
        at_least[j] = at_least[j + 1] | blocks[j]

    Hm = Am
    X = 0
    chosen: list[int] = []
    while True:
        pick = None
        for j, blk in enumerate(blocks):
            for x in iter_bits(Hm & blk):
                if (H.adj[x] & Hm & at_least[j]).bit_count() >= thr:
                    pick = (j, x)
                    break
            if pick:
                break
        if pick is None:
            break
        j, x = pick
        region = Hm & at_least[j]
        Xk = region & ~H.adj[x]
        if Xk.bit_count() > x_cap:
            _explain_large_piece(H, Q, a2, j, x, Hm, at_least[j + 1], t)
            raise InternalContradiction("oversized X piece without a witness", vertex=x)
        chosen.append(x)
        X |= Xk
        Hm = region & H.adj[x]
    if chosen and not H.is_clique(H.mask(chosen)):
        raise InternalContradiction("heavy vertices do not form a clique")
    rest = Am & ~X
    ordering = [v for blk in blocks for v in iter_bits(blk & rest)]
    return SplitResult(
        X=frozenset(iter_bits(X)),
        ordering=ordering,
        steps=len(chosen),
        back_degree=back_degree(H, ordering[::-1]),
        threshold=thr,
        x_bound=omega * x_cap,
    )


def _explain_large_piece(H, Q, a2, j, x, Hm, after, t) -> None:
    ahead = Hm & after
    Y = independent_mask(H, ahead & H.adj[x], t)
    if Y is None:
        return
    vj = Q.singles[j]
    for y in iter_bits(Y):
        T = independent_mask(H, ahead & ~H.adj[x] & ~H.adj[y] & ~(1 << y), t - 1)
        if T is not None:
            raise ForbiddenSubgraph(
                BroomWitness(vj, y, x, (*iter_bits(T), a2)), "large X piece: broom through a block single"
            )
    S = 0
    for u in iter_bits(ahead & ~H.adj[x]):
        if H.adj[u] & Y == Y:
            S |= 1 << u
    T = independent_mask(H, S, t - 1)
    if T is not None:
        raise ForbiddenSubgraph(
            BicliqueWitness((*iter_bits(T), x), tuple(iter_bits(Y))), "large X piece: induced biclique"
        )


# ---------------------------------------------------------------------------
# the recursion


class _Run:
    def __init__(self, G: Graph, t: int, mode: str):
        self.G = G
        self.t = t
        self.mode = mode
        self.bound = BoundFunction(t, mode)

    # -- helpers -------------------------------------------------------
    def fallback(self, H: Graph, ids, reason: str):
        """A check failed without a constructive witness: search directly."""
        w = find_induced_tbroom(H, self.t)
        if w is None and self.mode == "ktt":
            w = find_induced_ktt(H, self.t)
        if w is not None:
            raise ForbiddenSubgraph(w.mapped(ids), f"{reason} (witness by search)")
        raise InternalContradiction(f"{reason}, yet no forbidden subgraph exists")

    def child(self, H: Graph, ids, mask: int, parent_omega: int, node: dict) -> dict[int, int]:
        sub, sub_ids = H.induced(mask)
        root_ids = tuple(ids[i] for i in sub_ids)
        w = clique_size(sub)
        if w >= parent_omega:
            raise InternalContradiction(f"recursive call does not shrink omega ({w} >= {parent_omega})")
        node["child_omegas"].append(w)
        col, child_node = self.level(sub, root_ids, node["depth"] + 1)
        node["children"].append(child_node)
        return {sub_ids[v]: c for v, c in col.items()}

    def stable_Q(self, H: Graph, ids, Q: MultipartiteQ, w: int, node: dict):
        restarts = 0
        vmode = self.mode
        w0mode = "chi" if self.mode == "ktt" else "alpha"
        while True:
            part = partition_neighborhood(H, Q, w0mode, w)
            violations = validate_lemmas(H, self.t, Q, part, vmode)
            for v in violations:
                if v.witness is not None:
                    raise ForbiddenSubgraph(v.witness.mapped(ids), v.kind)
            step = next((v for v in violations if v.restart), None)
            if step is not None:
                if restarts >= w:
                    raise InternalContradiction("more Q improvements than omega allows")
                if step.better_Q is not None:
                    Q = step.better_Q
                else:
                    Q = improve_Q(H, Q, *step.trigger)
                restarts += 1
                continue
            if violations:
                self.fallback(H, ids, f"structural check '{violations[0].kind}' failed")
            node["restarts"] = restarts
            node["violations"] = []
            return Q, part

    # -- one level -----------------------------------------------------
    def level(self, H: Graph, ids, depth: int) -> tuple[dict[int, int], dict]:
        w = clique_size(H)
        budget = certified_bound(self.bound, w)
        node: dict = {
            "depth": depth, "n": H.n, "omega": w, "budget": budget,
            "vertices": list(ids), "children": [], "child_omegas": [], "sharing": [],
        }
        if H.n == 0:
            node["case"] = "empty"
            node["colors_used"] = 0
            return {}, node
        if w <= 1:
            node["case"] = "edgeless"
            node["colors_used"] = 1
            return {v: 0 for v in range(H.n)}, node
        comps = _components_mask(H, H.full_mask)
        if len(comps) > 1:
            col = self.color_components(H, ids, comps, node)
            node["case"] = "components"
            node["colors_used"] = _ncolors(col)
            return col, node
        Q = find_max_Q(H, self.t)
        if Q is None:
            col = _greedy(H, H.full_mask)
            node["case"] = "no_Q"
            node["max_degree"] = H.max_degree()
        else:
            Q, part = self.stable_Q(H, ids, Q, w, node)
            node["case"] = "decomposed"
            node["q"] = Q.q
            node["Q"] = Q.mapped(ids).to_json()
            node["sizes"] = part.sizes()
            if self.mode == "ktt":
                col = self.color_ktt_level(H, ids, Q, part, w, node)
            else:
                col = self.color_broom_level(H, ids, Q, part, w, node)
        used = _ncolors(col)
        node["colors_used"] = used
        if used > budget:
            self.fallback(H, ids, f"{used} colours exceed the certified bound {budget}")
        return col, node

    def color_components(self, H: Graph, ids, comps: list[int], node: dict) -> dict[int, int]:
        """Components are anticomplete, so they all draw from one palette."""
        out: dict[int, int] = {}
        for comp in comps:
            sub, sub_ids = H.induced(comp)
            col, child = self.level(sub, tuple(ids[i] for i in sub_ids), node["depth"] + 1)
            node["children"].append(child)
            out.update({sub_ids[v]: c for v, c in col.items()})
        node["sharing"].append({"reason": "connected components", "groups": [_roots(ids, c) for c in comps]})
        return out

    def color_broom_level(self, H, ids, Q, part: NeighborhoodPartition, w, node) -> dict[int, int]:
        out: dict[int, int] = {}
        palettes: dict[str, int] = {}
        offset = 0

        # Q and the far layers share a palette: they are at distance >= 2
        for i, s in enumerate(Q.singles):
            out[s] = i
        for v in Q.last:
            out[v] = Q.q - 1
        far = _greedy(H, H.mask(part.far))
        out.update(far)
        palettes["Q_far"] = max(Q.q, _ncolors(far))
        if part.far:
            node["sharing"].append({"reason": "Q and far layers", "groups": [_roots(ids, Q.vertices()), _roots(ids, part.far)]})
        offset += palettes["Q_far"]

        if self.mode == "chair":
            sides = []
            k_total = 0
            for vq in Q.last:
                side = frozenset(v for v in part.A if H.has_edge(v, vq))
                sides.append(_roots(ids, side))
                m = H.mask(side)
                k = max_clique_mask(H.adj, m).bit_count()
                exact = color_with_at_most(H, k, m)
                if exact is None:
                    self.fallback(H, ids, "A side is not perfect")
                for v, c in exact.assignment.items():
                    out[v] = offset + k_total + c
                k_total += k
            node["A_sides"] = sides
            palettes["A"] = k_total
        else:
            a = _greedy(H, H.mask(part.A))
            for v, c in a.items():
                out[v] = offset + c
            palettes["A"] = _ncolors(a)
        offset += palettes["A"]

        b = _greedy(H, H.mask(part.B))
        for v, c in b.items():
            out[v] = offset + c
        palettes["B"] = _ncolors(b)
        offset += palettes["B"]

        w0_size = 0
        w0_groups = []
        for comp in _components_mask(H, H.mask(part.W0)):
            sub = _greedy(H, comp)
            w0_size = max(w0_size, _ncolors(sub))
            for v, c in sub.items():
                out[v] = offset + c
            w0_groups.append(_roots(ids, comp))
        if len(w0_groups) > 1:
            node["sharing"].append({"reason": "W0 components", "groups": w0_groups})
        palettes["W0"] = w0_size
        offset += w0_size

        ref = refine_Z(H, part)
        rest, alloc = color_C_minus_W0(H, part, ref, lambda m: self.child(H, ids, m, w, node))
        for v, c in rest.items():
            out[v] = offset + c
        palettes["C_minus_W0"] = alloc.size
        node["p"] = ref.p
        node["overflow"] = len(alloc.overflow)
        if len(ref.components) > 1:
            node["sharing"].append({"reason": "W components", "groups": [_roots(ids, X) for X in ref.components]})
        for X, F in zip(ref.components, ref.F_X):
            if F:
                blocks = sorted(v for k in F for v in _roots(ids, ref.blocks[k]))
                node["sharing"].append({"reason": "W component reuses Z block palettes", "groups": [_roots(ids, X), blocks]})
        node["palettes"] = palettes
        return out

    def color_ktt_level(self, H, ids, Q, part: NeighborhoodPartition, w, node) -> dict[int, int]:
        t = self.t
        out: dict[int, int] = {}
        palettes: dict[str, int] = {}
        for i, s in enumerate(Q.singles):
            out[s] = i
        for v in Q.last:
            out[v] = Q.q - 1
        offset = Q.q
        for i, z in enumerate(sorted(part.Z)):
            out[z] = offset + i
        palettes["Q"] = Q.q
        palettes["Z"] = len(part.Z)
        offset += len(part.Z)

        # one shared palette from here on
        shared: dict[int, int] = {}
        cursor = 0
        labels: dict[tuple[int, int], set[int]] = {}
        for v in sorted(part.A):
            a = next(x for x in Q.last if H.has_edge(v, x))
            b = next(x for x in Q.last if not H.has_edge(v, x))
            labels.setdefault((a, b), set()).add(v)
        splits = []
        for (a, b), members in sorted(labels.items()):
            res = split_A_degenerate(H, Q, a, b, members, w)
            for i, x in enumerate(sorted(res.X)):
                shared[x] = cursor + i
            cursor += len(res.X)
            if res.ordering:
                greedy = greedy_color(H, res.ordering[::-1], list(range(res.threshold)))
                for v, c in greedy.assignment.items():
                    shared[v] = cursor + c
                cursor += greedy.colors_used
            splits.append({
                "label": [ids[a], ids[b]], "size": len(members), "X": len(res.X), "steps": res.steps,
                "back_degree": res.back_degree, "threshold": res.threshold, "x_bound": res.x_bound,
            })
        node["split_A"] = splits
        palettes["A"] = cursor

        b = _greedy(H, H.mask(part.B))
        for v, c in b.items():
            shared[v] = cursor + c
        palettes["B"] = _ncolors(b)
        cursor += palettes["B"]

        far = _greedy(H, H.mask(part.far))
        region = _ncolors(far)
        for v, c in far.items():
            shared[v] = cursor + c
        w0_groups = []
        for comp in _components_mask(H, H.mask(part.W0)):
            sub = part.w0_colorings[lowest(comp)]
            sub = Coloring(sub).canonical().assignment
            region = max(region, _ncolors(sub))
            for v, c in sub.items():
                shared[v] = cursor + c
            w0_groups.append(_roots(ids, comp))
        palettes["W0_far"] = region
        cursor += region
        if part.far or len(w0_groups) > 1:
            node["sharing"].append({"reason": "W0 components and far layers", "groups": w0_groups + ([_roots(ids, part.far)] if part.far else [])})

        rest_mask = H.mask(part.W - part.W0)
        rest_size = 0
        comps = _components_mask(H, rest_mask)
        for comp in comps:
            sub = self.child(H, ids, comp, w, node)
            rest_size = max(rest_size, _ncolors(sub))
            shared.update(sub)
        palettes["W_minus_W0"] = rest_size
        if comps:
            others = H.mask(part.A | part.B | part.W0 | part.far)
            groups = [_roots(ids, c) for c in comps]
            if others:
                groups.append(_roots(ids, others))
            if len(groups) > 1:
                node["sharing"].append({"reason": "W minus W0 against A, B, W0 and far", "groups": groups})

        palettes["shared"] = max(cursor, rest_size)
        for v, c in shared.items():
            out[v] = offset + c
        node["palettes"] = palettes
        return out


# ---------------------------------------------------------------------------
# entry points


def _result(G: Graph, t: int, mode: str, w: int, **kw) -> CertifiedResult:
    return CertifiedResult(
        t=t, mode=mode, omega=w, bound=certified_bound(BoundFunction(t, mode), w),
        graph_hash=graph_hash(G), **kw,
    )


def _not_in_class(G, t, mode, w, witness, source, reason, trace=None) -> CertifiedResult:
    if not verify_witness(G, witness, t):
        raise InternalContradiction(f"extracted witness {witness} does not verify ({reason})")
    trace = dict(trace or {})
    trace["witness_source"] = source
    trace["reason"] = reason
    return _result(G, t, mode, w, verdict=NOT_IN_CLASS, witness=witness, trace=trace)


def color_tbroom_free(G: Graph, t: int, mode: str | None = None, confirm: bool = True) -> CertifiedResult:
    """Colour G within the certified bound, or return a forbidden-subgraph witness.

    ``mode`` defaults to ``perfect`` for t = 1 and ``general`` otherwise.  With
    ``confirm`` a Colored verdict is only issued after the detector has also
    found no forbidden subgraph, so Colored means "in the class".
    """
    if t < 1:
        raise InputError(f"t must be >= 1, got {t}")
    if mode is None:
        mode = "perfect" if t == 1 else "general"
    BoundFunction(t, mode)  # validates the pairing
    w = clique_size(G)
    if mode == "perfect":
        return _color_perfect(G, w)
    run = _Run(G, t, mode)
    ids = tuple(range(G.n))
    try:
        col, trace = run.level(G, ids, 0)
    except ForbiddenSubgraph as exc:
        log.debug("witness from %s", exc.reason)
        return _not_in_class(G, t, mode, w, exc.witness, "decomposition", exc.reason)
    if confirm:
        wit = find_induced_tbroom(G, t)
        if wit is None and mode == "ktt":
            wit = find_induced_ktt(G, t)
        if wit is not None:
            return _not_in_class(G, t, mode, w, wit, "detector", "forbidden subgraph found by search", {"root": trace})
    coloring = Coloring(col).canonical()
    return _result(G, t, mode, w, verdict=COLORED, coloring=coloring, trace={"root": trace})


def _color_perfect(G: Graph, w: int) -> CertifiedResult:
    wit = find_induced_tbroom(G, 1)
    if wit is not None:
        return _not_in_class(G, 1, "perfect", w, wit, "detector", "induced P4")
    col = color_with_at_most(G, w)
    if col is None:
        raise InternalContradiction("P4-free graph without an omega-colouring")
    return _result(G, 1, "perfect", w, verdict=COLORED, coloring=col.canonical(),
                   trace={"root": {"case": "perfect", "n": G.n, "omega": w}})


def color_chair_free(G: Graph, confirm: bool = True) -> CertifiedResult:
    return color_tbroom_free(G, 2, "chair", confirm)


def color_ktt_free(G: Graph, t: int, confirm: bool = True) -> CertifiedResult:
    if t < 3:
        raise InputError(f"t must be >= 3, got {t}")
    return color_tbroom_free(G, t, "ktt", confirm)


def resolve_mode(t: int, mode: str) -> str:
    if mode != "auto":
        return mode
    return {1: "perfect", 2: "chair"}.get(t, "general")


def color(G: Graph, t: int, mode: str = "auto", confirm: bool = True) -> CertifiedResult:
    return color_tbroom_free(G, t, resolve_mode(t, mode), confirm)


def iter_levels(trace: dict):
    """Depth-first walk over the level nodes of a trace."""
    stack = [trace.get("root", trace)] if trace else []
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.get("children", [])))
